"""Exhaustive property checks shared by the unit and acceptance suites."""

from twistedk.cohomology import (
    all_classes,
    bockstein,
    cohomology,
    generators,
    n_torsion,
    reduce_mod,
)
from twistedk.groups import ZMod
from twistedk.products import Z2, cup, sq


def exactness_failures(K, n):
    """Degrees where reduce_mod / bockstein break exactness at H^k(Z/n) or H^{k+1}(Z)."""
    failures = []
    ring = ZMod(n)
    for k in range(K.dim + 1):
        Gn = cohomology(K, k, ring)
        image_rho = Gn.subgroup_generated([reduce_mod(x, n).coords for x in generators(K, k)])
        kernel_beta = set()
        image_beta = set()
        for y in all_classes(K, k, ring):
            b = bockstein(y)
            image_beta.add(b.coords)
            if b.is_zero():
                kernel_beta.add(y.coords)
        if image_rho != kernel_beta:
            failures.append((k, "image(reduce_mod) != kernel(bockstein)"))
        if image_beta != n_torsion(cohomology(K, k + 1), n):
            failures.append((k, "image(bockstein) != n-torsion"))
    return failures


def steenrod_failures(K):
    """Axioms of the squares on every mod-2 class of K."""
    failures = []
    for m in range(K.dim + 1):
        for x in all_classes(K, m, Z2):
            if sq(0, x) != x:
                failures.append((m, x.coords, "Sq0 != id"))
            if sq(m, x) != cup(x, x):
                failures.append((m, x.coords, "Sq^m x != x cup x"))
            for k in range(m + 1, m + 3):
                if not sq(k, x).is_zero():
                    failures.append((m, x.coords, f"Sq^{k} nonzero above degree"))
            if sq(1, x) != reduce_mod(bockstein(x), 2):
                failures.append((m, x.coords, "Sq1 != reduced bockstein"))
    return failures
