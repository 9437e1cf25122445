#!/usr/bin/env python3
import setuptools

setuptools.setup(
    python_requires=">=3.8",
    install_requires=[
        'numpy >=1.21',
        'networkx >=2.8',
        'sympy >=1.10',
        'lambda-thread-pool >=0.0.2'
    ]
)
