//! Closed-form reference measures (semicircle, Gaussian, symmetric
//! Bernoulli, mu_q for negative q, mu_{alpha,beta} at moment level) and
//! Gauss-Legendre quadrature of their moments as an analytic oracle.

use num_traits::{One, Zero};

use crate::error::PairweaveError;
use crate::freeprob::MomentSeq;
use crate::pairings::enumerate_pairings;
use crate::scalar::{QPoly, Rational};

pub fn rational_to_f64(x: &Rational) -> f64 {
    let num = x.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let den = x.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    num / den
}

/// Which constant goes in the atom mass of mu_q:
/// `Paper` keeps max(1-2(1+q),0)/(4|q|) verbatim; `Derived` uses
/// max(1-2(1+q),0)/(2|q|), which is what total mass 1 and the q -> -1
/// endpoint force. Derived is the default everywhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtomMode {
    Paper,
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityKind {
    Semicircle,
    Gaussian,
    /// Atoms only.
    None,
    /// Continuous part of mu_q; the parameter is q as f64.
    MuQ,
}

#[derive(Clone, Debug)]
pub struct MeasureSpec {
    pub kind: DensityKind,
    /// Density support is [-r, r].
    pub r: f64,
    /// q value for the MuQ kind, unused otherwise.
    pub q: f64,
    pub atoms: Vec<(f64, f64)>,
}

pub fn make_semicircle() -> MeasureSpec {
    MeasureSpec {
        kind: DensityKind::Semicircle,
        r: 2.0,
        q: 0.0,
        atoms: Vec::new(),
    }
}

pub fn make_gaussian() -> MeasureSpec {
    // the tail beyond |x| = 12 is far below quadrature tolerance
    MeasureSpec {
        kind: DensityKind::Gaussian,
        r: 12.0,
        q: 0.0,
        atoms: Vec::new(),
    }
}

pub fn make_bernoulli() -> MeasureSpec {
    MeasureSpec {
        kind: DensityKind::None,
        r: 0.0,
        q: 0.0,
        atoms: vec![(-1.0, 0.5), (1.0, 0.5)],
    }
}

/// mu_q for -1 < q < 0: continuous density
/// (1/2pi) sqrt(4(1+q) - t^2) / (1 - |q| t^2) on [-2 sqrt(1+q), 2 sqrt(1+q)]
/// plus, when q < -1/2, a pair of atoms at +-sqrt(1/|q|).
pub fn make_mu_q(q: &Rational, mode: AtomMode) -> Result<MeasureSpec, PairweaveError> {
    if q >= &Rational::zero() || q <= &(-Rational::one()) {
        return Err(PairweaveError::InvalidArgument(
            "mu_q density requires -1 < q < 0".into(),
        ));
    }
    let qf = rational_to_f64(q);
    let r = 2.0 * (1.0 + qf).sqrt();
    let excess = 1.0 - 2.0 * (1.0 + qf); // max(1-2(1+q),0) before clamping
    let mut atoms = Vec::new();
    if excess > 0.0 {
        let denom = match mode {
            AtomMode::Paper => 4.0 * qf.abs(),
            AtomMode::Derived => 2.0 * qf.abs(),
        };
        let mass = excess / denom;
        let loc = (1.0 / qf.abs()).sqrt();
        atoms.push((-loc, mass));
        atoms.push((loc, mass));
    }
    Ok(MeasureSpec {
        kind: DensityKind::MuQ,
        r,
        q: qf,
        atoms,
    })
}

/// Density value at t; zero outside the support. Atoms do not contribute.
pub fn density_eval(spec: &MeasureSpec, t: f64) -> f64 {
    if t.abs() > spec.r {
        return 0.0;
    }
    match spec.kind {
        DensityKind::None => 0.0,
        DensityKind::Semicircle => {
            let inner = 1.0 - (t / 2.0) * (t / 2.0);
            inner.max(0.0).sqrt() / std::f64::consts::PI
        }
        DensityKind::Gaussian => (-t * t / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt(),
        DensityKind::MuQ => {
            let num = (4.0 * (1.0 + spec.q) - t * t).max(0.0).sqrt();
            let den = 1.0 - spec.q.abs() * t * t;
            num / den / (2.0 * std::f64::consts::PI)
        }
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre three-term recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            // derivative from P_n and P_{n-1}
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

#[derive(Clone, Debug)]
pub struct QuadMoments {
    /// m_1 .. m_order (atoms included).
    pub moments: Vec<f64>,
    /// Continuous mass + atom mass; should be 1 for a probability measure.
    pub total_mass: f64,
    /// Max absolute difference against the 2*npoints rerun, over total mass
    /// and all requested moments.
    pub error_estimate: f64,
}

fn quad_moments_once(spec: &MeasureSpec, order: usize, npoints: usize) -> (Vec<f64>, f64) {
    let mut moments = vec![0.0; order];
    let mut mass = 0.0;
    if spec.kind != DensityKind::None && spec.r > 0.0 {
        // substitution t = r sin(theta) soaks up the edge square-root
        // singularity: dt = r cos(theta) d(theta), theta in [-pi/2, pi/2]
        let (nodes, weights) = gauss_legendre(npoints);
        let half_pi = std::f64::consts::FRAC_PI_2;
        for (x, w) in nodes.iter().zip(weights.iter()) {
            let theta = half_pi * x;
            let t = spec.r * theta.sin();
            let jac = half_pi * spec.r * theta.cos();
            let f = density_eval(spec, t) * jac * w;
            mass += f;
            let mut tp = 1.0;
            for m in moments.iter_mut() {
                tp *= t;
                *m += f * tp;
            }
        }
    }
    for &(loc, am) in &spec.atoms {
        mass += am;
        let mut tp = 1.0;
        for m in moments.iter_mut() {
            tp *= loc;
            *m += am * tp;
        }
    }
    (moments, mass)
}

pub fn quad_moments(
    spec: &MeasureSpec,
    order: usize,
    npoints: usize,
) -> Result<QuadMoments, PairweaveError> {
    if npoints < 64 {
        return Err(PairweaveError::InvalidArgument(
            "quadrature needs at least 64 nodes".into(),
        ));
    }
    let (moments, mass) = quad_moments_once(spec, order, npoints);
    let (moments2, mass2) = quad_moments_once(spec, order, 2 * npoints);
    let mut err = (mass - mass2).abs();
    for (a, b) in moments.iter().zip(moments2.iter()) {
        err = err.max((a - b).abs());
    }
    Ok(QuadMoments {
        moments: moments2,
        total_mass: mass2,
        error_estimate: err,
    })
}

/// Exact moments of mu_{alpha,beta} with beta^2 given as a polynomial in q:
/// m_{2r} = sum over non-crossing pairings of alpha^(2 #outer) (b2)^(#inner).
pub fn mu_ab_moments_beta2poly(
    alpha: &Rational,
    beta2: &QPoly,
    order: usize,
) -> Result<MomentSeq, PairweaveError> {
    if order > 16 {
        return Err(PairweaveError::InvalidArgument(
            "mu_{alpha,beta} moments capped at order 16".into(),
        ));
    }
    let alpha2 = alpha * alpha;
    let mut out = Vec::with_capacity(order);
    for n in 1..=order {
        if n % 2 != 0 {
            out.push(QPoly::zero());
            continue;
        }
        let mut acc = QPoly::zero();
        for v in enumerate_pairings(n)? {
            if !v.is_noncrossing() {
                continue;
            }
            let (outer, inner) = v.inner_outer_counts()?;
            let mut pw = Rational::one();
            for _ in 0..outer {
                pw *= &alpha2;
            }
            acc += &beta2.pow(inner).scale(&pw);
        }
        out.push(acc);
    }
    Ok(MomentSeq(out))
}

pub fn mu_ab_moments(
    alpha: &Rational,
    beta2: &Rational,
    order: usize,
) -> Result<MomentSeq, PairweaveError> {
    mu_ab_moments_beta2poly(alpha, &QPoly::constant(beta2.clone()), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeprob::mu_q_moments;
    use crate::pairings::catalan;
    use crate::scalar::{rat, rat_int};

    #[test]
    fn legendre_nodes_integrate_polynomials() {
        let (nodes, weights) = gauss_legendre(8);
        let integ = |f: &dyn Fn(f64) -> f64| -> f64 {
            nodes.iter().zip(&weights).map(|(x, w)| w * f(*x)).sum()
        };
        assert!((integ(&|_| 1.0) - 2.0).abs() < 1e-13);
        assert!(integ(&|x| x).abs() < 1e-13);
        assert!((integ(&|x| x * x) - 2.0 / 3.0).abs() < 1e-13);
        // degree 15 is still exact with 8 nodes
        assert!((integ(&|x| x.powi(14)) - 2.0 / 15.0).abs() < 1e-13);
    }

    #[test]
    fn semicircle_moments() {
        let qm = quad_moments(&make_semicircle(), 8, 256).unwrap();
        assert!((qm.total_mass - 1.0).abs() < 1e-10);
        for r in 1..=4usize {
            assert!(
                (qm.moments[2 * r - 1] - catalan(r) as f64).abs() < 1e-8,
                "m_{}",
                2 * r
            );
            assert!(qm.moments[2 * r - 2].abs() < 1e-10);
        }
    }

    #[test]
    fn gaussian_moments() {
        let qm = quad_moments(&make_gaussian(), 6, 256).unwrap();
        assert!((qm.total_mass - 1.0).abs() < 1e-8);
        assert!((qm.moments[1] - 1.0).abs() < 1e-8);
        assert!((qm.moments[3] - 3.0).abs() < 1e-8);
        assert!((qm.moments[5] - 15.0).abs() < 1e-7);
    }

    #[test]
    fn bernoulli_moments_exact() {
        let qm = quad_moments(&make_bernoulli(), 10, 64).unwrap();
        assert_eq!(qm.total_mass, 1.0);
        for r in 1..=5 {
            assert_eq!(qm.moments[2 * r - 1], 1.0);
            assert_eq!(qm.moments[2 * r - 2], 0.0);
        }
        assert_eq!(qm.error_estimate, 0.0);
    }

    #[test]
    fn mu_q_spec_shapes() {
        // q = -1/2: support [-sqrt 2, sqrt 2], no atoms
        let s = make_mu_q(&rat(-1, 2), AtomMode::Derived).unwrap();
        assert!((s.r - 2f64.sqrt()).abs() < 1e-15);
        assert!(s.atoms.is_empty());

        // q = -3/4: atoms at +-sqrt(4/3), outside the support
        let s = make_mu_q(&rat(-3, 4), AtomMode::Derived).unwrap();
        assert_eq!(s.atoms.len(), 2);
        let loc = (4.0f64 / 3.0).sqrt();
        assert!((s.atoms[1].0 - loc).abs() < 1e-15);
        assert!((s.atoms[1].1 - 1.0 / 3.0).abs() < 1e-15);
        assert!(loc > s.r);

        let p = make_mu_q(&rat(-3, 4), AtomMode::Paper).unwrap();
        assert!((p.atoms[1].1 - 1.0 / 6.0).abs() < 1e-15);

        assert!(make_mu_q(&rat_int(0), AtomMode::Derived).is_err());
        assert!(make_mu_q(&rat_int(-1), AtomMode::Derived).is_err());
        assert!(make_mu_q(&rat(1, 2), AtomMode::Derived).is_err());
    }

    #[test]
    fn density_values() {
        let s = make_mu_q(&rat(-1, 2), AtomMode::Derived).unwrap();
        let expect = 2f64.sqrt() / (2.0 * std::f64::consts::PI);
        assert!((density_eval(&s, 0.0) - expect).abs() < 1e-15);
        assert_eq!(density_eval(&s, 10.0), 0.0);
        let semi = make_semicircle();
        assert!((density_eval(&semi, 0.0) - 1.0 / std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(density_eval(&semi, 2.5), 0.0);
    }

    #[test]
    fn density_nonnegative_on_support() {
        for q in [rat(-1, 4), rat(-1, 2), rat(-3, 4), rat(-9, 10)] {
            let s = make_mu_q(&q, AtomMode::Derived).unwrap();
            for i in 0..=200 {
                let t = -s.r + 2.0 * s.r * (i as f64) / 200.0;
                assert!(density_eval(&s, t) >= 0.0, "q={q} t={t}");
            }
        }
    }

    #[test]
    fn mu_q_quadrature_matches_exact_moments() {
        for q in [rat(-1, 4), rat(-1, 2), rat(-3, 4), rat(-9, 10)] {
            let spec = make_mu_q(&q, AtomMode::Derived).unwrap();
            let qm = quad_moments(&spec, 10, 256).unwrap();
            assert!((qm.total_mass - 1.0).abs() < 1e-8, "mass at q={q}");
            let exact = mu_q_moments(&q, 10).unwrap().to_rationals().unwrap();
            for (n, m) in exact.iter().enumerate() {
                let e = rational_to_f64(m);
                assert!(
                    (qm.moments[n] - e).abs() < 1e-8,
                    "q={q} m_{} got {} want {e}",
                    n + 1,
                    qm.moments[n]
                );
            }
        }
    }

    #[test]
    fn paper_atom_mode_misses_mass() {
        // at q = -3/4 the verbatim atom constant leaves total mass 2/3
        let spec = make_mu_q(&rat(-3, 4), AtomMode::Paper).unwrap();
        let qm = quad_moments(&spec, 2, 256).unwrap();
        assert!((qm.total_mass - 2.0 / 3.0).abs() < 1e-8);
        assert!((qm.total_mass - 1.0).abs() > 0.3);
    }

    #[test]
    fn mu_ab_small_cases() {
        let ms = mu_ab_moments(&rat_int(1), &rat_int(1), 12).unwrap();
        let r = ms.to_rationals().unwrap();
        for k in 1..=6 {
            assert_eq!(r[2 * k - 1], rat_int(catalan(k) as i64));
        }
        // order 4 with symbolic b: m_2 = 1, m_4 = 1 + b
        let sym = mu_ab_moments_beta2poly(&rat_int(1), &QPoly::var(), 4).unwrap();
        assert_eq!(sym.0[1], QPoly::one());
        assert_eq!(sym.0[3], &QPoly::one() + &QPoly::var());
    }

    #[test]
    fn mu_ab_matches_mu_q() {
        for q in [rat(-1, 4), rat(-1, 2), rat(-3, 4)] {
            let beta2 = Rational::one() + &q;
            let ab = mu_ab_moments(&rat_int(1), &beta2, 12).unwrap();
            assert_eq!(ab, mu_q_moments(&q, 12).unwrap(), "q={q}");
        }
    }

    #[test]
    fn quad_rejects_few_points() {
        assert!(quad_moments(&make_semicircle(), 4, 32).is_err());
    }
}
