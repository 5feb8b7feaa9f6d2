from hypothesis import settings

settings.register_profile("ideal-graphs", max_examples=60, deadline=None)
settings.load_profile("ideal-graphs")
