"""
Episode metrics, reports and plots.
"""
