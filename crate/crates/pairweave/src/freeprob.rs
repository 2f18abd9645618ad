//! Non-crossing partitions, the moment/cumulant transforms, free
//! convolution and dilation of symmetric moment sequences, and the
//! convolution-semigroup identity for the mu_q family.

use num_traits::{One, Zero};

use crate::error::PairweaveError;
use crate::pairings::enumerate_pairings;
use crate::scalar::{QPoly, Rational};
use crate::states::{selfadjoint_moments, CovarianceQ};
use crate::weights::{eval_weight, Weight};

/// A non-crossing partition of {1..n} with blocks of arbitrary size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl NCPartition {
    pub fn n(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }
}

/// All non-crossing partitions of {1..n}; count = Catalan(n).
pub fn enumerate_nc(n: usize) -> Result<Vec<NCPartition>, PairweaveError> {
    if n > 12 {
        return Err(PairweaveError::InvalidArgument(
            "non-crossing enumeration capped at n = 12".into(),
        ));
    }
    fn rec(points: &[usize]) -> Vec<Vec<Vec<usize>>> {
        if points.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        let first = points[0];
        let rest = &points[1..];
        // choose the rest of first's block as a subsequence of `rest`;
        // the gaps between consecutive chosen points must be partitioned
        // independently, which is exactly the non-crossing condition
        let m = rest.len();
        for mask in 0u32..(1 << m) {
            let mut block = vec![first];
            let mut segments: Vec<Vec<usize>> = Vec::new();
            let mut current: Vec<usize> = Vec::new();
            for (i, &p) in rest.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    block.push(p);
                    segments.push(std::mem::take(&mut current));
                } else {
                    current.push(p);
                }
            }
            segments.push(current);
            // cartesian product of the segment partitions
            let mut partials: Vec<Vec<Vec<usize>>> = vec![vec![block]];
            for seg in &segments {
                let sub = rec(seg);
                let mut next = Vec::with_capacity(partials.len() * sub.len());
                for p in &partials {
                    for s in &sub {
                        let mut combined = p.clone();
                        combined.extend(s.iter().cloned());
                        next.push(combined);
                    }
                }
                partials = next;
            }
            out.extend(partials);
        }
        out
    }
    let points: Vec<usize> = (1..=n).collect();
    Ok(rec(&points)
        .into_iter()
        .map(|mut blocks| {
            blocks.sort_by_key(|b| b[0]);
            NCPartition { blocks }
        })
        .collect())
}

/// Moment sequence m_1..m_N with m_0 = 1 implicit; entries are polynomials
/// so q can stay symbolic through the transforms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSeq(pub Vec<QPoly>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CumulantSeq(pub Vec<QPoly>);

impl MomentSeq {
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn from_rationals(ms: &[Rational]) -> MomentSeq {
        MomentSeq(ms.iter().cloned().map(QPoly::constant).collect())
    }

    /// Substitute a rational q; fails if an entry is non-constant... it
    /// never fails, evaluation is total.
    pub fn eval(&self, q: &Rational) -> Vec<Rational> {
        self.0.iter().map(|p| p.eval(q)).collect()
    }

    pub fn to_rationals(&self) -> Result<Vec<Rational>, PairweaveError> {
        self.0
            .iter()
            .map(|p| {
                if p.degree().unwrap_or(0) > 0 {
                    Err(PairweaveError::InvalidArgument(
                        "moment sequence is symbolic, not numeric".into(),
                    ))
                } else {
                    Ok(p.coeffs().first().cloned().unwrap_or_else(Rational::zero))
                }
            })
            .collect()
    }
}

/// g[s][t] = sum over compositions t = n_1 + ... + n_s (n_j >= 0) of
/// m_{n_1} ... m_{n_s}, with m_0 = 1.
fn composition_sums(m: &[QPoly], smax: usize, tmax: usize) -> Vec<Vec<QPoly>> {
    let get_m = |k: usize| -> QPoly {
        if k == 0 {
            QPoly::one()
        } else {
            m[k - 1].clone()
        }
    };
    let mut g = vec![vec![QPoly::zero(); tmax + 1]; smax + 1];
    g[0][0] = QPoly::one();
    for s in 1..=smax {
        for t in 0..=tmax {
            let mut acc = QPoly::zero();
            for j in 0..=t {
                let gj = g[s - 1][t - j].clone();
                if gj.is_zero() {
                    continue;
                }
                acc += &(&get_m(j) * &gj);
            }
            g[s][t] = acc;
        }
    }
    g
}

/// Invert m_n = sum_{s=1}^{n} k_s * sum_{n_1+..+n_s = n-s} m_{n_1}..m_{n_s}.
pub fn moments_to_cumulants(m: &MomentSeq) -> CumulantSeq {
    let nmax = m.len();
    let g = composition_sums(&m.0, nmax, nmax);
    let mut k: Vec<QPoly> = Vec::with_capacity(nmax);
    for n in 1..=nmax {
        let mut acc = m.0[n - 1].clone();
        for s in 1..n {
            acc -= &(&k[s - 1] * &g[s][n - s]);
        }
        // the s = n term has coefficient g[n][0] = 1
        k.push(acc);
    }
    CumulantSeq(k)
}

/// Forward evaluation of the same recursion.
pub fn cumulants_to_moments(k: &CumulantSeq) -> MomentSeq {
    let nmax = k.0.len();
    let mut m: Vec<QPoly> = Vec::with_capacity(nmax);
    for n in 1..=nmax {
        // only t <= n - s <= n - 1 is read, and m holds n - 1 entries so far
        let g = composition_sums(&m, n, n - 1);
        let mut acc = QPoly::zero();
        for s in 1..=n {
            acc += &(&k.0[s - 1] * &g[s][n - s]);
        }
        m.push(acc);
    }
    MomentSeq(m)
}

/// Direct non-crossing-sum transform, used as an independent oracle for the
/// recursion: m_n = sum over NC(n) of the product of k_{#block}.
pub fn cumulants_to_moments_ncsum(k: &CumulantSeq) -> Result<MomentSeq, PairweaveError> {
    let nmax = k.0.len();
    let mut m = Vec::with_capacity(nmax);
    for n in 1..=nmax {
        let mut acc = QPoly::zero();
        for part in enumerate_nc(n)? {
            let mut term = QPoly::one();
            for block in &part.blocks {
                term *= &k.0[block.len() - 1];
            }
            acc += &term;
        }
        m.push(acc);
    }
    Ok(MomentSeq(m))
}

/// Free convolution at moment level: cumulants add.
pub fn free_convolve(a: &MomentSeq, b: &MomentSeq) -> Result<MomentSeq, PairweaveError> {
    if a.len() != b.len() {
        return Err(PairweaveError::InvalidArgument(
            "free convolution needs equal-length moment sequences".into(),
        ));
    }
    let ka = moments_to_cumulants(a);
    let kb = moments_to_cumulants(b);
    let sum = CumulantSeq(
        ka.0.iter()
            .zip(kb.0.iter())
            .map(|(x, y)| x + y)
            .collect(),
    );
    Ok(cumulants_to_moments(&sum))
}

/// Dilation D_lambda of a symmetric (odd moments zero) sequence, with
/// lambda^2 rational so even moments stay exact: m_{2r} <- lam2^r m_{2r}.
pub fn dilate(a: &MomentSeq, lam2: &Rational) -> Result<MomentSeq, PairweaveError> {
    let mut out = Vec::with_capacity(a.len());
    let mut power = Rational::one();
    for (idx, m) in a.0.iter().enumerate() {
        let n = idx + 1;
        if n % 2 == 1 {
            if !m.is_zero() {
                return Err(PairweaveError::InvalidArgument(format!(
                    "dilation supports only symmetric sequences; m_{n} != 0"
                )));
            }
            out.push(QPoly::zero());
        } else {
            power *= lam2;
            out.push(m.scale(&power));
        }
    }
    Ok(MomentSeq(out))
}

/// Exact moments of mu_q, the spectral distribution of c + c* in the vacuum
/// state: the pairing sum under t_q, with the signed extension for q < 0.
pub fn mu_q_moments(q: &Rational, order: usize) -> Result<MomentSeq, PairweaveError> {
    if order > 16 {
        return Err(PairweaveError::InvalidArgument(
            "mu_q moments capped at order 16".into(),
        ));
    }
    let one = Rational::one();
    if q > &one || q < &-one.clone() {
        return Err(PairweaveError::InvalidArgument(
            "mu_q needs -1 <= q <= 1".into(),
        ));
    }
    let signed = q < &Rational::zero();
    let symbolic = cached_symbolic(signed, order);
    Ok(MomentSeq(
        symbolic
            .iter()
            .map(|p| QPoly::constant(p.eval(q)))
            .collect(),
    ))
}

/// The symbolic pairing sums are q-independent, so grid evaluations share
/// one enumeration per (regime, order) via this cache.
fn cached_symbolic(signed: bool, order: usize) -> Vec<QPoly> {
    use std::sync::Mutex;
    static CACHE: Mutex<Vec<Option<Vec<QPoly>>>> = Mutex::new(Vec::new());
    let slot = if signed { 1 } else { 0 };
    let mut cache = CACHE.lock().unwrap();
    if cache.is_empty() {
        cache.push(None);
        cache.push(None);
    }
    let have = cache[slot].as_ref().map_or(0, |v| v.len());
    if have < order {
        let weight = if signed { Weight::TQNeg } else { Weight::TQ };
        cache[slot] = Some(selfadjoint_moments(&weight, order, &CovarianceQ::fock()));
    }
    cache[slot].as_ref().unwrap()[..order].to_vec()
}

/// Symbolic mu_q moments (in the indeterminate q) for the given regime.
pub fn mu_q_moments_symbolic(weight: &Weight, order: usize) -> MomentSeq {
    MomentSeq(selfadjoint_moments(weight, order, &CovarianceQ::fock()))
}

/// Free cumulants computed by restricting the pairing sum to connected
/// (one-block) pairings.
pub fn connected_cumulants(t: &Weight, order: usize) -> Result<CumulantSeq, PairweaveError> {
    if order > 14 {
        return Err(PairweaveError::InvalidArgument(
            "connected cumulants capped at order 14".into(),
        ));
    }
    let mut out = Vec::with_capacity(order);
    for n in 1..=order {
        if n % 2 != 0 {
            out.push(QPoly::zero());
            continue;
        }
        let mut acc = QPoly::zero();
        for v in enumerate_pairings(n)? {
            if v.block_count() == 1 {
                acc += &eval_weight(t, &v);
            }
        }
        out.push(acc);
    }
    Ok(CumulantSeq(out))
}

/// Count of connected pairings of 2r points (1, 1, 4, 27, 248, ...).
pub fn connected_pairing_count(r: usize) -> Result<u64, PairweaveError> {
    Ok(enumerate_pairings(2 * r)?
        .filter(|v| v.block_count() == 1)
        .count() as u64)
}

#[derive(Debug)]
pub struct Theorem6Report {
    pub q: Rational,
    pub lhs: Vec<Rational>,
    pub rhs: Vec<Rational>,
    pub equal: bool,
}

/// The convolution-semigroup identity: with 1/q = 1/q1 + 1/q2,
/// mu_q = D_{sqrt(q/q1)} mu_{q1} boxplus D_{sqrt(q/q2)} mu_{q2},
/// checked exactly at moment level.
pub fn verify_theorem6(
    q1: &Rational,
    q2: &Rational,
    order: usize,
) -> Result<Theorem6Report, PairweaveError> {
    if order > 14 {
        return Err(PairweaveError::InvalidArgument(
            "theorem6 check capped at order 14".into(),
        ));
    }
    if q1.is_zero() || q2.is_zero() {
        return Err(PairweaveError::InvalidArgument(
            "q1 and q2 must be nonzero".into(),
        ));
    }
    if (q1 > &Rational::zero()) != (q2 > &Rational::zero()) {
        return Err(PairweaveError::InvalidArgument(
            "mixed-sign (q1, q2) is outside the verified identity".into(),
        ));
    }
    let q = (q1 * q2) / (q1 + q2);
    let a = dilate(&mu_q_moments(q1, order)?, &(&q / q1))?;
    let b = dilate(&mu_q_moments(q2, order)?, &(&q / q2))?;
    let rhs = free_convolve(&a, &b)?.to_rationals()?;
    let lhs = mu_q_moments(&q, order)?.to_rationals()?;
    let equal = lhs == rhs;
    Ok(Theorem6Report { q, lhs, rhs, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairings::catalan;
    use crate::scalar::{rat, rat_int};

    fn consts(xs: &[i64]) -> Vec<QPoly> {
        xs.iter().map(|&x| QPoly::constant(rat_int(x))).collect()
    }

    #[test]
    fn nc_counts() {
        assert_eq!(enumerate_nc(1).unwrap().len(), 1);
        assert_eq!(enumerate_nc(3).unwrap().len(), 5);
        assert_eq!(enumerate_nc(4).unwrap().len(), 14);
        for n in 1..=8 {
            assert_eq!(enumerate_nc(n).unwrap().len() as u64, catalan(n));
        }
    }

    #[test]
    fn nc_pair_partitions_of_four() {
        let pair_parts: Vec<_> = enumerate_nc(4)
            .unwrap()
            .into_iter()
            .filter(|p| p.blocks.iter().all(|b| b.len() == 2))
            .collect();
        assert_eq!(pair_parts.len(), 2); // V1 and V3 only
    }

    #[test]
    fn nc_blocks_are_noncrossing() {
        for part in enumerate_nc(6).unwrap() {
            let blocks = &part.blocks;
            for (bi, b1) in blocks.iter().enumerate() {
                for b2 in blocks.iter().skip(bi + 1) {
                    for &a in b1 {
                        for &c in b1 {
                            for &b in b2 {
                                for &d in b2 {
                                    assert!(!(a < b && b < c && c < d));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn gaussian_cumulants() {
        // m = (0,1,0,3,0,15) -> k = (0,1,0,1,0,4): connected pairing counts
        let m = MomentSeq(consts(&[0, 1, 0, 3, 0, 15]));
        let k = moments_to_cumulants(&m);
        assert_eq!(k.0, consts(&[0, 1, 0, 1, 0, 4]));
    }

    #[test]
    fn semicircle_cumulants() {
        let m = MomentSeq(consts(&[0, 1, 0, 2, 0, 5]));
        let k = moments_to_cumulants(&m);
        assert_eq!(k.0, consts(&[0, 1, 0, 0, 0, 0]));
    }

    #[test]
    fn mu_q_symbolic_cumulants() {
        let m = mu_q_moments_symbolic(&Weight::TQ, 6);
        let k = moments_to_cumulants(&m);
        assert_eq!(k.0[1], QPoly::one());
        assert_eq!(k.0[3], QPoly::var()); // k_4 = q
        assert_eq!(k.0[5], QPoly::monomial(rat_int(4), 2)); // k_6 = 4 q^2
    }

    #[test]
    fn semicircle_moments_from_k2() {
        let mut k = consts(&[0, 1]);
        k.extend(consts(&[0, 0, 0, 0]));
        let m = cumulants_to_moments(&CumulantSeq(k));
        assert_eq!(m.0, consts(&[0, 1, 0, 2, 0, 5]));
    }

    #[test]
    fn mu_q_moments_from_cumulants() {
        // k = (0,1,0,q,0,4q^2) -> m = (0,1,0,2+q,0,5+6q+4q^2)
        let k = CumulantSeq(vec![
            QPoly::zero(),
            QPoly::one(),
            QPoly::zero(),
            QPoly::var(),
            QPoly::zero(),
            QPoly::monomial(rat_int(4), 2),
        ]);
        let m = cumulants_to_moments(&k);
        assert_eq!(m, mu_q_moments_symbolic(&Weight::TQ, 6));
    }

    #[test]
    fn transform_roundtrip_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let m = MomentSeq(
                (0..10)
                    .map(|_| QPoly::constant(rat(rng.random_range(-9..=9), rng.random_range(1..=5))))
                    .collect(),
            );
            let k = moments_to_cumulants(&m);
            assert_eq!(cumulants_to_moments(&k), m);
        }
    }

    #[test]
    fn recursion_matches_nc_sum_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let k = CumulantSeq(
                (0..8)
                    .map(|_| QPoly::constant(rat(rng.random_range(-5..=5), rng.random_range(1..=3))))
                    .collect(),
            );
            assert_eq!(
                cumulants_to_moments(&k),
                cumulants_to_moments_ncsum(&k).unwrap()
            );
        }
    }

    #[test]
    fn convolve_with_delta0_is_identity() {
        let a = mu_q_moments(&rat(1, 2), 8).unwrap();
        let delta0 = MomentSeq(vec![QPoly::zero(); 8]);
        assert_eq!(free_convolve(&a, &delta0).unwrap(), a);
    }

    #[test]
    fn convolve_commutative_associative() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                MomentSeq(
                    (1..=10usize)
                        .map(|n| {
                            if n % 2 == 1 {
                                QPoly::zero()
                            } else {
                                QPoly::constant(rat(rng.random_range(0..=9), rng.random_range(1..=4)))
                            }
                        })
                        .collect(),
                )
            };
            let a = mk(&mut rng);
            let b = mk(&mut rng);
            let c = mk(&mut rng);
            let ab = free_convolve(&a, &b).unwrap();
            let ba = free_convolve(&b, &a).unwrap();
            assert_eq!(ab, ba);
            let ab_c = free_convolve(&ab, &c).unwrap();
            let a_bc = free_convolve(&a, &free_convolve(&b, &c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
        }
    }

    #[test]
    fn bernoulli_convolution_is_arcsine() {
        // two symmetric Bernoullis scaled by 1/sqrt(2): m_2 = 1, m_4 = 3/2
        let bern = MomentSeq(consts(&[0, 1, 0, 1, 0, 1, 0, 1]));
        let scaled = dilate(&bern, &rat(1, 2)).unwrap();
        let arcsine = free_convolve(&scaled, &scaled).unwrap();
        let ms = arcsine.to_rationals().unwrap();
        assert_eq!(ms[1], rat_int(1));
        assert_eq!(ms[3], rat(3, 2));
        // equals mu_{-1/2}: the arcsine law sits at q = -1/2
        assert_eq!(arcsine, mu_q_moments(&rat(-1, 2), 8).unwrap());
    }

    #[test]
    fn dilate_laws() {
        let a = mu_q_moments(&rat(1, 2), 8).unwrap();
        assert_eq!(dilate(&a, &rat_int(1)).unwrap(), a);
        let g = MomentSeq(consts(&[0, 1, 0, 3, 0, 15]));
        let gd = dilate(&g, &rat(1, 2)).unwrap();
        assert_eq!(gd.0[3], QPoly::constant(rat(3, 4)));
        assert_eq!(gd.0[5], QPoly::constant(rat(15, 8)));
        let xy = dilate(&dilate(&a, &rat(1, 3)).unwrap(), &rat(2, 5)).unwrap();
        assert_eq!(xy, dilate(&a, &rat(2, 15)).unwrap());
        // odd nonzero moments rejected
        let skew = MomentSeq(consts(&[1, 1]));
        assert!(dilate(&skew, &rat(1, 2)).is_err());
    }

    #[test]
    fn mu_q_boundary_values() {
        let catalan_ms = mu_q_moments(&rat_int(0), 12).unwrap().to_rationals().unwrap();
        for r in 1..=6 {
            assert_eq!(catalan_ms[2 * r - 1], rat_int(catalan(r) as i64));
        }
        let bern = mu_q_moments(&rat_int(-1), 12).unwrap().to_rationals().unwrap();
        for r in 1..=6 {
            assert_eq!(bern[2 * r - 1], rat_int(1));
        }
        let half = mu_q_moments(&rat(-1, 2), 4).unwrap().to_rationals().unwrap();
        assert_eq!(half[3], rat(3, 2));
    }

    #[test]
    fn gaussian_free_halves() {
        // D_{1/sqrt 2} mu_1 boxplus D_{1/sqrt 2} mu_1 = mu_{1/2}
        let g = mu_q_moments(&rat_int(1), 8).unwrap();
        let half = dilate(&g, &rat(1, 2)).unwrap();
        let conv = free_convolve(&half, &half).unwrap();
        let ms = conv.to_rationals().unwrap();
        assert_eq!(ms[3], rat(5, 2));
        assert_eq!(ms[5], rat_int(9));
        assert_eq!(conv, mu_q_moments(&rat(1, 2), 8).unwrap());
    }

    #[test]
    fn connected_counts() {
        let expect = [1u64, 1, 4, 27];
        for (r, &e) in expect.iter().enumerate() {
            assert_eq!(connected_pairing_count(r + 1).unwrap(), e);
        }
    }

    #[test]
    fn connected_cumulants_tq() {
        let k = connected_cumulants(&Weight::TQ, 8).unwrap();
        assert_eq!(k.0[1], QPoly::one());
        assert_eq!(k.0[3], QPoly::var());
        assert_eq!(k.0[5], QPoly::monomial(rat_int(4), 2));
        assert_eq!(k.0[7], QPoly::monomial(rat_int(27), 3));
    }

    #[test]
    fn connected_cumulants_match_transform() {
        // two independent paths to the free cumulants of mu_q
        let direct = connected_cumulants(&Weight::TQ, 12).unwrap();
        let via_moments = moments_to_cumulants(&mu_q_moments_symbolic(&Weight::TQ, 12));
        assert_eq!(direct.0, via_moments.0);
    }

    #[test]
    fn theorem6_basic() {
        let rep = verify_theorem6(&rat_int(1), &rat_int(1), 12).unwrap();
        assert_eq!(rep.q, rat(1, 2));
        assert!(rep.equal);

        let rep = verify_theorem6(&rat_int(-1), &rat_int(-1), 12).unwrap();
        assert_eq!(rep.q, rat(-1, 2));
        assert!(rep.equal);
    }

    #[test]
    fn theorem6_grid() {
        let grid = [rat_int(1), rat(1, 2), rat(1, 3), rat(3, 4)];
        for a in &grid {
            for b in &grid {
                assert!(verify_theorem6(a, b, 12).unwrap().equal, "{a} {b}");
                let (na, nb) = (-a.clone(), -b.clone());
                assert!(verify_theorem6(&na, &nb, 12).unwrap().equal, "-{a} -{b}");
            }
        }
    }

    #[test]
    fn theorem6_rejects_bad_inputs() {
        assert!(verify_theorem6(&rat_int(0), &rat_int(1), 8).is_err());
        assert!(verify_theorem6(&rat_int(1), &rat_int(-1), 8).is_err());
    }

    #[test]
    fn iterated_convolution_reaches_mu_one_third() {
        for base in [rat_int(1), rat_int(-1)] {
            let g = mu_q_moments(&base, 10).unwrap();
            let third = dilate(&g, &rat(1, 3)).unwrap();
            let conv = free_convolve(
                &free_convolve(&third, &third).unwrap(),
                &third,
            )
            .unwrap();
            let target = mu_q_moments(&(&base / rat_int(3)), 10).unwrap();
            assert_eq!(conv, target, "base = {base}");
        }
    }

    #[test]
    fn cumulant_scaling_identity() {
        // q^{r-1} = (q/q1)^r q1^{r-1} + (q/q2)^r q2^{r-1} on the grid
        let grid = [rat_int(1), rat(1, 2), rat(1, 3), rat(3, 4)];
        for q1 in &grid {
            for q2 in &grid {
                let q = (q1 * q2) / (q1 + q2);
                for r in 1..=7u32 {
                    let pow = |x: &Rational, e: u32| -> Rational {
                        let mut acc = Rational::one();
                        for _ in 0..e {
                            acc *= x;
                        }
                        acc
                    };
                    let lhs = pow(&q, r - 1);
                    let rhs = pow(&(&q / q1), r) * pow(q1, r - 1)
                        + pow(&(&q / q2), r) * pow(q2, r - 1);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
