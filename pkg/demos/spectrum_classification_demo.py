"""Which part of the spectrum does the ray e^{t R_-} occupy?

The verdict follows from the decay/boundedness of the diagonalizing
multiplier: square-integrable means point spectrum, square-integrable
reciprocal means residual, two-sided boundedness means continuous, and a
one-sided bound yields approximate spectrum only.
"""

from spectral_ssmp.exponents import WienerHopfPair
from spectral_ssmp.families import make_bernstein
from spectral_ssmp.spectrum import classify
from spectral_ssmp.transform import GridSpec


def gamma_pair(at, al, rho):
    return WienerHopfPair(
        make_bernstein("gamma-ratio-plus", alpha_tilde=at),
        make_bernstein("gamma-ratio-minus", alpha=al, rho=rho))


pid = make_bernstein("drift", d=1.0)
cases = [
    ("brownian (id, id)", WienerHopfPair(pid, pid)),
    ("gamma pair (0.7, 0.3, 1.0)", gamma_pair(0.7, 0.3, 1.0)),
    ("gamma pair (0.3, 0.7, 1.0)", gamma_pair(0.3, 0.7, 1.0)),
    ("gamma pair (0.5, 0.5, 0.75)", gamma_pair(0.5, 0.5, 0.75)),
    ("drift + finite atoms vs stable",
     WienerHopfPair(make_bernstein("compound-poisson", atoms=[[1.0, 2.0]],
                                   d=1.0),
                    make_bernstein("stable", beta=0.5))),
    ("slow polynomial ratio",
     WienerHopfPair(make_bernstein("gamma-ratio-minus", alpha=0.5, rho=0.3),
                    make_bernstein("gamma-ratio-minus", alpha=0.5, rho=0.75))),
]

spec = GridSpec()
print(f"{'pair':38s} {'verdict':16s} {'branch':12s} theta+        theta-")
for name, pair in cases:
    rep = classify(pair, spec)
    tp = f"[{rep.theta_plus[0]:.3f},{rep.theta_plus[1]:.3f}]"
    tm = f"[{rep.theta_minus[0]:.3f},{rep.theta_minus[1]:.3f}]"
    print(f"{name:38s} {rep.verdict:16s} {rep.branch:12s} {tp:13s} {tm}")
