#!/usr/bin/env python3
"""Find the analyzer phases maximizing |S_M| and |S_V| for the W and GHZ states."""

import math

from tribell import Functional, make_ghz, make_w, optimize


def report(name, state, functional):
    result = optimize(state, functional)
    print(f"{name}, {functional.value}: max = {result.best_value:.9f}")
    for party, pair in zip("abc", result.best_settings):
        print(
            f"    party {party}: phi = {math.degrees(pair.phi):10.5f} deg,"
            f"  phi' = {math.degrees(pair.phi_prime):10.5f} deg"
        )


if __name__ == "__main__":
    for functional in Functional:
        report("W", make_w(), functional)
    for functional in Functional:
        report("GHZ (circular)", make_ghz("circular_rl"), functional)
