#!/usr/bin/env python3
"""Tensor-degree filtration certificates and the c(j-1)+1 bound.

Prints certificates for a range of free nilpotent groups: each layer of
the homology filtration with its tensor degree, the degree bound, and
the sharpness witness sitting in the outermost page cell.  Class three
and above report second-page upper bounds; class up to two is exact.
"""

from nilhom import (FreeNilpotentSpec, filtration_certificate,
                    tensor_degree_bound)


def show(spec, j):
    cert = filtration_certificate(spec, j)
    tag = "exact" if cert.dimensions_exact else "upper bounds"
    print(f"rank {spec.rank}, class {spec.nil_class}, degree {j}: "
          f"bound {cert.bound}, total {cert.total_dimension} ({tag})")
    for layer in cert.layers:
        origin = " <- ".join(str(c) for c in layer.origin) or "(ground)"
        print(f"    degree {layer.tensor_degree:2d}  dim {layer.dimension:3d}"
              f"  from {origin}")


def main():
    print("== class 2: exact layers, bound 2j - 1 attained at the first cell ==")
    for j in (1, 2, 3):
        show(FreeNilpotentSpec(3, 2), j)

    print("\n== class 3: recursion through the lower central series ==")
    for j in (1, 2, 3):
        show(FreeNilpotentSpec(2, 3), j)

    print("\n== the bound table c(j-1)+1 ==")
    header = "c\\j " + "".join(f"{j:4d}" for j in range(6))
    print(header)
    for c in range(1, 5):
        row = f"{c:3d} " + "".join(f"{tensor_degree_bound(c, j):4d}"
                                   for j in range(6))
        print(row)


if __name__ == "__main__":
    main()
