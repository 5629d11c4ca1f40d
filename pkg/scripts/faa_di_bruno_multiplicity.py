#!/usr/bin/env python3
"""List the partition terms of the k-th derivative of exp(-1/x^2).

For each partition of k the script prints its multiplicity and checks that
the partition sum equals the ladder g_{k+1} = g_k' + 2 g_k / x^3. For k = 4
the (2,1,1) term carries multiplicity 4!/(2! 1! 1! 2!) = 6.

    python3 scripts/faa_di_bruno_multiplicity.py 4
"""
import sys

from taylor_forge.ode import _partitions, expinvsq_ladder, faa_di_bruno_ladder, partition_multiplicity


def main(k: int = 4):
    print(f"partitions of {k}:")
    for part in _partitions(k):
        print(f"  {part!s:<16} multiplicity {partition_multiplicity(part)}")
    by_partitions = faa_di_bruno_ladder(k)
    by_ladder = expinvsq_ladder(k)[k]
    print("partition sum :", by_partitions)
    print("ladder g_k    :", by_ladder)
    print("agree" if by_partitions == by_ladder else "DISAGREE")
    return 0 if by_partitions == by_ladder else 1


if __name__ == "__main__":
    sys.exit(main(int(sys.argv[1]) if len(sys.argv) > 1 else 4))
