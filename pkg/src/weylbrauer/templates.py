"""Generator recipes for the tensor-square isomorphism, kept as expression text.

Placeholders: ``{i}`` generator index, ``{c}`` and ``{cp}`` the two
parameters (as residues), ``{eps}`` = 1 iff i <= n, ``{omega}`` = 1 iff
i > n.  The recipes are rendered with :func:`render` and evaluated by the
expression parser, so a wrong exponent shows up as a failed relation
check, not as silently wrong code.

In ``omega(c)_*A (x) omega(c')_*A`` (generators x_i, y_i):

* ``zeta_i``  generates a copy of ``omega(c + c')_*A``,
* ``alpha_i`` generates a copy of the restricted Weyl algebra
  (alpha_i^p = 0), which is a p^n x p^n matrix algebra.

The inverse recipes express x_i and y_i back in terms of zeta and alpha;
they are evaluated in the source algebra with ``x_i`` bound to zeta_i and
``y_i`` bound to alpha_i.
"""

from __future__ import annotations

ZETA = "inv({c} + {cp})^{eps}*({c}^{eps}*x{i} + {cp}^{eps}*y{i})"
ALPHA = "inv({c} + {cp})^{eps}*({cp}^{omega}*x{i} - {c}^{omega}*y{i})"

X_FROM_ZETA_ALPHA = "inv({c} + {cp})^{omega}*({c}^{omega}*x{i} + {cp}^{eps}*y{i})"
Y_FROM_ZETA_ALPHA = "inv({c} + {cp})^{omega}*({cp}^{omega}*x{i} - {c}^{eps}*y{i})"

# Variants used as negative controls: exponents on the wrong index set.
ZETA_SWAPPED = "inv({c} + {cp})^{omega}*({c}^{omega}*x{i} + {cp}^{omega}*y{i})"
ALPHA_SWAPPED = "inv({c} + {cp})^{omega}*({cp}^{eps}*x{i} - {c}^{eps}*y{i})"

# The map omega(-1)_*A -> A^op on generators.
OPPOSITE_IMAGE = "(0 - 1)^{omega}*x{i}"
OPPOSITE_IMAGE_WRONG = "(0 - 1)^{eps}*x{i}"


def render(template: str, i: int, n: int, c: int = 1, cp: int = 1) -> str:
    eps = 1 if i <= n else 0
    return template.format(i=i, c=c, cp=cp, eps=eps, omega=1 - eps)
