"""Pure-python (numpy) fallback for the hot evaluation kernel.

Same contract as the compiled `_kernels` extension; selected by
`spheremin.kernels` when the extension is not built.
"""

import numpy as np

BACKEND = "python"


def eval_product(coeff, kinds, ks, cs, exps, z, out):
    """Evaluate coeff * prod(factor**exp) at every point of `z`.

    kinds: 0 = monomial (z), 1 = shifted power (z**k - c).
    `out` must be a complex128 array of the same shape as `z`.
    """
    out[...] = coeff
    for kind, k, c, e in zip(kinds, ks, cs, exps):
        base = z if kind == 0 else z ** int(k) - c
        out *= base ** int(e)
    return out
