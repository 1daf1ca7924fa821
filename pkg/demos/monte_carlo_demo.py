"""Cross-validation: spectral evolution against the path-space oracle.

The positive self-similar process attached to psi(xi) = xi^2 is simulated
through the time change X_t(x) = x exp(Z_{phi(t/x)}) of a Brownian-type
path, and E_x[f(X_t)] is compared with the grid evolution at ln x.  The
drift-only exponent has a closed-form clock and reproduces f(x + d t)
exactly.
"""

import numpy as np

from spectral_ssmp.exponents import Exponent, LevyQuadruplet, WienerHopfPair
from spectral_ssmp.families import make_bernstein
from spectral_ssmp.lamperti import SimConfig, mc_expectation
from spectral_ssmp.semigroup import EvolutionPlan, evolve
from spectral_ssmp.transform import GridSpec, h_fixture

spec = GridSpec()
pid = make_bernstein("drift", d=1.0)
plan = EvolutionPlan(WienerHopfPair(pid, pid), spec)
f = h_fixture(spec, 0.5, 1.0)
t = 0.5
spectral = evolve(plan, t, f)

cfg = SimConfig(dt=1e-3, n_paths=20_000, seed=11)
e_bm = Exponent(quadruplet=LevyQuadruplet(sigma2=1.0))
obs = lambda r: np.interp(np.log(r), spec.x, f.values.real,
                          left=0.0, right=0.0)
print(f"psi(xi) = xi^2, t = {t}, {cfg.n_paths} paths, dt = {cfg.dt}")
for x0 in (0.0, 0.5):
    est = mc_expectation(e_bm, obs, float(np.exp(x0)), t, cfg)
    grid_val = float(np.interp(x0, spec.x, spectral.values.real))
    print(f"  x = {x0}: evolve = {grid_val:.5f}, MC = {est.mean:.5f} "
          f"+- {est.stderr:.5f}  (absorbed {est.absorbed_fraction:.1%})")

est = mc_expectation(Exponent(quadruplet=LevyQuadruplet(b=2.0)),
                     lambda r: r, 1.5, 0.75,
                     SimConfig(dt=1e-3, n_paths=64, seed=5))
print(f"drift-only closed form: E X_t = {est.mean} (exact 3.0), "
      f"stderr = {est.stderr}")
