"""Citation keys attached to every check in a report.

Each key names one mathematical statement the engine verifies; the
one-line descriptions are the engine's own wording.
"""

CLAIMS = {
    "azumaya-action-map": "an algebra is Azumaya when A (x) A^op -> End_R(A) is an isomorphism",
    "idempotent-decomposition": "a product ring has orthogonal component idempotents summing to 1",
    "shift-operator": "componentwise shifts satisfy Sigma^m Sigma^n = Sigma^(m+n)",
    "tilting-shift-decomposition": "a tilting complex is a shift of an invertible bimodule by a unique section",
    "automorphism-extraction": "invertible bimodules give automorphisms stabilising the Brauer class",
    "brauer-equivalence-action": "Aut(X) acts on Br(X) by pushforward",
    "brauer-inverse-opposite": "the inverse of [A] is [A^op]",
    "dpic-extension-cocycle": "DPic(A) is an extension of the stabiliser by sections x Pic, twisted by a 2-cocycle",
    "dpic-semidirect-product": "with trivial cocycle DPic is the semidirect product (sections x Pic) x| Aut",
    "local-csa-dpic": "for a central simple algebra DPic(A) = Z x Out(A)",
    "weyl-presentation": "A_n(k) has relations [x_i, x_j] = delta(i, j+n) - delta(i+n, j) and center k[x_i^p]",
    "omega-automorphism": "omega(c) rescales z_i by c^(-omega_i)",
    "weyl-class-nontrivial": "[phi_* A_n(k)] is never the trivial class since A_n(k) is a domain",
    "tensor-square-isomorphism": "zeta/alpha generators give A (x)_Z A = omega(2)_*A (x)_Z M_{p^n}(Z)",
    "omega-group-law": "[omega(c)_*A][omega(c')_*A] = [omega(c+c')_*A], so [A_n] has order p",
    "omega-embedding": "c -> [omega(c)_*A_n] embeds the additive group of k into Br",
    "dpic-not-surjective": "DPic(A_n(k)) -> DPic(Z_n(k)) is not surjective",
}

IN_SCOPE = tuple(CLAIMS)
