"""Entropy production and effective temperatures along the interaction chain.

The total entropy of system plus chain never changes, yet the relative
entropy with respect to the initial product state grows monotonically to
a finite limit, and the distinguished oscillator thermalizes to the
chain temperature at the geometric rate |z|^2 per step.
"""

import math

from richain import (
    ModelParams,
    effective_beta_S,
    effective_beta_Sm,
    entropy_production_limit,
    relative_entropy,
    step_scalars,
    total_entropy,
)

p = ModelParams(E=1.0, eps=1.0, eta=0.5, tau=1.0, N=30,
                beta0=math.log(3), beta=math.log(2))
q = abs(step_scalars(p).z) ** 2
limit = entropy_production_limit(p)

print(f"chain at beta = ln 2, system starts at beta0 = ln 3, |z|^2 = {q:.4f}")
print(f"entropy production limit: {limit:.10f} nats\n")

print(" m   total S(m)      Ent(m)        limit - Ent(m)   beta*(m)   beta**(m)")
for m in (0, 1, 2, 5, 10, 20, 30):
    ent = relative_entropy(p, m)
    bss = effective_beta_Sm(p, m) if m >= 1 else float("nan")
    print(f"{m:2d}   {total_entropy(p, m):.8f}   {ent:.8f}   {limit - ent:.3e}"
          f"      {effective_beta_S(p, m):.5f}    {bss:.5f}")

print("\nthe gap closes by exactly |z|^2 per step:")
for m in (1, 5, 10, 20):
    gap_ratio = (limit - relative_entropy(p, m + 1)) / (limit - relative_entropy(p, m))
    print(f"  m = {m:2d}: gap(m+1)/gap(m) = {gap_ratio:.10f}")
