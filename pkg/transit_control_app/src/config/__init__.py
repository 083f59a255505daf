"""
Run configuration: defaults, validation and typed settings.
"""
