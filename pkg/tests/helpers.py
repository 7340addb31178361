"""Shared builders for tests."""

from itertools import permutations

import numpy as np

from gsmash.document import FORMAT, parse_document
from gsmash.linalg import kernel_matrix


def s3_table():
    perms = list(permutations(range(3)))
    # composition (p q)(i) = p(q(i))
    table = [[perms.index(tuple(p[q[i]] for i in range(3))) for q in perms] for p in perms]
    return ["".join(map(str, p)) for p in perms], table


def s3_path_document(field="Q"):
    """Linear quiver 1 -a-> 2 -b-> 3 graded by non-commuting transpositions."""
    elements, table = s3_table()
    return parse_document(
        {
            "format": FORMAT,
            "name": "a3-s3",
            "field": field,
            "group": {"elements": elements, "table": table},
            "algebra": {
                "kind": "quiver",
                "vertices": ["1", "2", "3"],
                "arrows": [
                    {"name": "a", "source": "1", "target": "2", "degree": "102"},
                    {"name": "b", "source": "2", "target": "3", "degree": "021"},
                ],
                "relations": [],
                "nilpotency_bound": 3,
            },
            "modules": {},
            "lattices": {},
        }
    )


def hom_oracle_dim(M, N) -> int:
    """dim Hom_A(M, N) by solving f M(b_i) = N(b_i) f for all basis elements at once."""
    F = M.field
    dM, dN = M.dim, N.dim
    rows = [
        F.reduce(np.kron(F.eye(dN), M.action[i].T) - np.kron(N.action[i], F.eye(dM)))
        for i in range(M.action.shape[0])
    ]
    return kernel_matrix(F, np.concatenate(rows)).shape[1]
