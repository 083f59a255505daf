#!/usr/bin/env python3.12
from setuptools import setup

setup(
    name="transit-control",
    version="1.0",
    packages=[
        "transit_control_app",
        "transit_control_app/src",
        "transit_control_app/src/agents",
        "transit_control_app/src/commands",
        "transit_control_app/src/config",
        "transit_control_app/src/env",
        "transit_control_app/src/metrics",
        "transit_control_app/src/neural",
        "transit_control_app/src/parser",
        "transit_control_app/src/scenario",
        "transit_control_app/src/sim",
        "transit_control_app/src/trainer",
    ],
    package_data={"transit_control_app": ["fixtures/*.json", "fixtures/*.yaml"]},
    install_requires=["pyyaml", "numpy", "scipy", "matplotlib", "pandas"],
    extras_require={"test": ["pytest"]},
    entry_points={
        "console_scripts": ["transit-control = transit_control_app.main:main"],
    },
)
