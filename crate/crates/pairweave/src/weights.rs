//! Weight functions on 2-partitions: the connected-component weight t_q in
//! both parameter regimes, the inversion-count weight t̂_mu, the fermionic
//! sign weight t_{-1}, and pointwise products. Also the multiplicativity
//! checker and the signed/non-crossing summation identity.

use crate::error::PairweaveError;
use crate::pairings::{enumerate_pairings, Pairing};
use crate::scalar::{QPoly, Rational};
use num_traits::One;

/// A weight function t on 2-partitions. Evaluation is symbolic: the result
/// is a polynomial in the indeterminate (q for the t_q family, mu for the
/// symbolic t̂_mu).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weight {
    /// t_q(V) = q^(#V - #B(V)), for 0 <= q <= 1.
    TQ,
    /// The negative-regime extension t_q := t_{-q} * t_{-1} for
    /// -1 <= q <= 0, returned as a signed monomial in the indeterminate so
    /// that evaluation at a negative rational q gives
    /// (-q)^(#V-#B(V)) * (-1)^(#I(V)).
    TQNeg,
    /// t̂_mu(V) = mu^(#I(V)). With `mu: None` the indeterminate stands for
    /// mu; with a fixed rational the weight evaluates to a constant, which
    /// keeps mixed q/mu products univariate.
    THatMu { mu: Option<Rational> },
    /// t_{-1}(V) = (-1)^(#I(V)).
    TMinusOne,
    /// Pointwise product, kept flat.
    Product(Vec<Weight>),
}

impl Weight {
    pub fn product(factors: Vec<Weight>) -> Weight {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                Weight::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        Weight::Product(flat)
    }
}

fn sign(exp: usize) -> Rational {
    if exp % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Evaluate a weight on a pairing, exactly.
pub fn eval_weight(w: &Weight, v: &Pairing) -> QPoly {
    let e = v.size() - v.block_count();
    let i = v.crossing_count();
    match w {
        Weight::TQ => QPoly::monomial(Rational::one(), e),
        Weight::TQNeg => QPoly::monomial(sign(e + i), e),
        Weight::THatMu { mu: None } => QPoly::monomial(Rational::one(), i),
        Weight::THatMu { mu: Some(m) } => {
            let mut acc = Rational::one();
            for _ in 0..i {
                acc *= m;
            }
            QPoly::constant(acc)
        }
        Weight::TMinusOne => QPoly::constant(sign(i)),
        Weight::Product(factors) => {
            let mut acc = QPoly::one();
            for f in factors {
                acc *= &eval_weight(f, v);
            }
            acc
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultiplicativityMode {
    /// Top-level splits (1..k) | (k+1..n).
    Weak,
    /// Pyramidal splits: an inner interval (k+1..l) against its complement.
    Strong,
}

#[derive(Debug)]
pub struct MultiplicativityReport {
    pub checked: usize,
    pub violations: Vec<MultiplicativityViolation>,
}

#[derive(Debug)]
pub struct MultiplicativityViolation {
    pub union: Vec<(usize, usize)>,
    pub whole: QPoly,
    pub product: QPoly,
}

impl MultiplicativityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively test t(V1 ∪ V2) = t(V1) * t(V2) over every split of the
/// required shape for every n <= nmax, for an arbitrary pairing functional.
pub fn check_multiplicativity_fn<F>(
    t: F,
    nmax: usize,
    mode: MultiplicativityMode,
) -> Result<MultiplicativityReport, PairweaveError>
where
    F: Fn(&Pairing) -> QPoly,
{
    if nmax > 10 {
        return Err(PairweaveError::InvalidArgument(
            "multiplicativity check capped at nmax = 10".into(),
        ));
    }
    let mut checked = 0;
    let mut violations = Vec::new();
    for n in (2..=nmax).step_by(2) {
        for split in splits(n, mode) {
            let (inner_pos, outer_pos) = split;
            if inner_pos.is_empty() || outer_pos.is_empty() {
                continue;
            }
            if inner_pos.len() % 2 != 0 || outer_pos.len() % 2 != 0 {
                continue;
            }
            for v_in in enumerate_pairings(inner_pos.len())? {
                for v_out in enumerate_pairings(outer_pos.len())? {
                    let mut union = relabel(&v_in, &inner_pos);
                    union.extend(relabel(&v_out, &outer_pos));
                    let whole = Pairing::new(union.clone())?;
                    let lhs = t(&whole);
                    let rhs = &t(&v_in) * &t(&v_out);
                    checked += 1;
                    if lhs != rhs {
                        violations.push(MultiplicativityViolation {
                            union,
                            whole: lhs,
                            product: rhs,
                        });
                    }
                }
            }
        }
    }
    Ok(MultiplicativityReport { checked, violations })
}

pub fn check_multiplicativity(
    w: &Weight,
    nmax: usize,
    mode: MultiplicativityMode,
) -> Result<MultiplicativityReport, PairweaveError> {
    check_multiplicativity_fn(|v| eval_weight(w, v), nmax, mode)
}

/// Map a standard pairing onto an ordered position list.
fn relabel(v: &Pairing, positions: &[usize]) -> Vec<(usize, usize)> {
    v.pairs()
        .iter()
        .map(|&(k, l)| (positions[k - 1], positions[l - 1]))
        .collect()
}

/// Position splits of (1..n) for the given mode: (inner segment, complement).
fn splits(n: usize, mode: MultiplicativityMode) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    match mode {
        MultiplicativityMode::Weak => {
            for k in 1..n {
                out.push(((1..=k).collect(), (k + 1..=n).collect()));
            }
        }
        MultiplicativityMode::Strong => {
            for k in 0..n {
                for l in (k + 1)..=n {
                    if k == 0 && l == n {
                        continue;
                    }
                    let inner: Vec<usize> = (k + 1..=l).collect();
                    let outer: Vec<usize> =
                        (1..=k).chain(l + 1..=n).collect();
                    out.push((inner, outer));
                }
            }
        }
    }
    out
}

/// Both sides of the signed pairing-sum identity
/// sum over P2 of q^(#V-#B) (-1)^(#I)  ==  sum over NC2 of (1-q)^(#inner),
/// as exact polynomials.
pub fn verify_corollary7(r: usize) -> Result<(QPoly, QPoly, bool), PairweaveError> {
    if r == 0 || r > 6 {
        return Err(PairweaveError::InvalidArgument(
            "corollary7 supported for 1 <= r <= 6".into(),
        ));
    }
    let mut lhs = QPoly::zero();
    let mut rhs = QPoly::zero();
    let one_minus_q = &QPoly::one() - &QPoly::var();
    for v in enumerate_pairings(2 * r)? {
        let e = v.size() - v.block_count();
        lhs += &QPoly::monomial(sign(v.crossing_count()), e);
        if v.is_noncrossing() {
            let (_, inner) = v.inner_outer_counts()?;
            rhs += &one_minus_q.pow(inner);
        }
    }
    let equal = lhs == rhs;
    Ok((lhs, rhs, equal))
}
