from hypothesis import HealthCheck, settings

# property tests run numpy-heavy bodies; the per-example deadline only adds
# flakiness on loaded machines
settings.register_profile(
    "phasecoder",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("phasecoder")
