"""Walkthrough: batch-proving a parameterized family of recurrences.

The template b*x0/(1+x0) (a discrete logistic-type map) is instantiated at
random rational values of b in (1, 5]; each instance is proved end to end
and the results are collected into one deterministic table.
Run with: python3 demos/webbook_demo.py
"""
from fractions import Fraction

from gasprover import webbook

report = webbook(
    template="b*x0/(1+x0)",
    ranges={"b": (Fraction(1), Fraction(5))},
    count=8,
    seed=2024,
    maxK=8,
)
print(report.to_text())
print("Every sampled instance has equilibrium b - 1, and each row carries")
print("its own positivity certificate for the reported K.")
