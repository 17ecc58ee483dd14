import hypothesis

# Derandomized so failures reproduce exactly in CI and locally.
hypothesis.settings.register_profile(
    "cswsat",
    derandomize=True,
    max_examples=100,
    deadline=None,
)
hypothesis.settings.load_profile("cswsat")
