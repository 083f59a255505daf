"""
Training and evaluation loops.
"""
