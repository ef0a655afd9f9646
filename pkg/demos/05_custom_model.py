"""
Bring your own model
====================

Describe a variety in JSON, load it, and query it.  Here: P^1 x P^1 with
basis h1, h2 written out by hand.
"""

import json

from fanoslope import loads_model, model_to_dict, xi
from fanoslope.model import seshadri_constant

doc = {
    "name": "quadric surface",
    "dim": 2,
    "basis": ["h1", "h2"],
    "tensor": [{"indices": "h1 h2", "value": "1"}],
    "anticanonical": {"h1": "2", "h2": "2"},
    "rays": [
        {"name": "l1", "pairing": {"h2": "1"}, "length": 2},
        {"name": "l2", "pairing": {"h1": "1"}, "length": 2},
    ],
    "effective_generators": [{"h1": "1"}, {"h2": "1"}],
    "named_divisors": {"h1": {"h1": "1"}, "diag": {"h1": "1", "h2": "1"}},
}
m = loads_model(json.dumps(doc))
print(m.name, "vol(-K) =", m.anticanonical_volume())

for name in ["h1", "diag"]:
    rep = xi(m, name)
    print(f"{name}: eps = {rep.epsilon}, xi = {rep.xi}, {rep.verdict}")

# coordinates work too; 2h1 + h2 is ample
d = m.divisor([2, 1])
s = seshadri_constant(m, m.anticanonical, d)
print("eps(2h1 + h2) =", s.value, "witness", s.witness_ray)
print(json.dumps(model_to_dict(m)["tensor"]))
