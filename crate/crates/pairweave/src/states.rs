//! The pairing-prescription states: exact evaluation of word moments under
//! a kernel, a covariance frame Q, and a weight, plus the finite positivity
//! certificates (word Grams, symmetric-group Grams, Hankel matrices).

use num_traits::{One, Zero};

use crate::error::PairweaveError;
use crate::linalg::{psd_check, PsdReport};
use crate::pairings::{enumerate_pairings, enumerate_permutations};
use crate::scalar::{QPoly, Rational};
use crate::weights::{eval_weight, Weight};

/// One letter of a word: a generator index plus a star flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub star: bool,
}

impl Letter {
    pub fn c(index: usize) -> Letter {
        Letter { index, star: false }
    }
    pub fn c_star(index: usize) -> Letter {
        Letter { index, star: true }
    }
    /// A selfadjoint omega generator; under the all-ones Q the star flag is
    /// irrelevant.
    pub fn omega(index: usize) -> Letter {
        Letter { index, star: false }
    }
}

/// A finite product of letters; the empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reverse the letter order and flip every star flag: the adjoint word,
    /// so that w * w.reverse_starred() plays the role of a a*.
    pub fn reverse_starred(&self) -> Word {
        Word(
            self.0
                .iter()
                .rev()
                .map(|l| Letter {
                    index: l.index,
                    star: !l.star,
                })
                .collect(),
        )
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

/// Symmetric kernel (i,j) -> <f̄_i, f_j>. The default is the identity
/// kernel of an orthonormal self-conjugate basis.
#[derive(Clone, Debug)]
pub enum Kernel {
    Identity,
    Custom(std::collections::BTreeMap<(usize, usize), Rational>),
}

impl Kernel {
    pub fn eval(&self, i: usize, j: usize) -> Rational {
        match self {
            Kernel::Identity => {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }
            Kernel::Custom(map) => {
                let key = (i.min(j), i.max(j));
                map.get(&key).cloned().unwrap_or_else(Rational::zero)
            }
        }
    }
}

/// The 2x2 covariance frame Q indexed by the star flags of the left and
/// right letter of a pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovarianceQ {
    entries: [[Rational; 2]; 2],
}

impl CovarianceQ {
    pub fn new(entries: [[Rational; 2]; 2]) -> Self {
        CovarianceQ { entries }
    }

    /// Q(sharp_left, sharp_right) with `true` meaning a starred letter.
    pub fn eval(&self, star_left: bool, star_right: bool) -> &Rational {
        &self.entries[star_left as usize][star_right as usize]
    }

    /// Fock / vacuum frame: only rho(c c*) = 1.
    pub fn fock() -> Self {
        let mut e = [
            [Rational::zero(), Rational::zero()],
            [Rational::zero(), Rational::zero()],
        ];
        e[0][1] = Rational::one();
        CovarianceQ::new(e)
    }

    /// Infinite-temperature symmetric frame: rho(c c*) = rho(c* c) = 1.
    pub fn symmetric() -> Self {
        let mut e = [
            [Rational::zero(), Rational::zero()],
            [Rational::zero(), Rational::zero()],
        ];
        e[0][1] = Rational::one();
        e[1][0] = Rational::one();
        CovarianceQ::new(e)
    }

    /// All-ones frame of the omega generators.
    pub fn omega_case() -> Self {
        CovarianceQ::new([
            [Rational::one(), Rational::one()],
            [Rational::one(), Rational::one()],
        ])
    }

    pub fn entry_sum(&self) -> Rational {
        self.entries
            .iter()
            .flatten()
            .fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Entrywise (Schur) product of two covariance frames.
pub fn schur_q(q1: &CovarianceQ, q2: &CovarianceQ) -> CovarianceQ {
    let mut e = [
        [Rational::zero(), Rational::zero()],
        [Rational::zero(), Rational::zero()],
    ];
    for (a, row) in e.iter_mut().enumerate() {
        for (b, v) in row.iter_mut().enumerate() {
            *v = &q1.entries[a][b] * &q2.entries[a][b];
        }
    }
    CovarianceQ::new(e)
}

/// The pairing prescription: sum over all 2-partitions of the positions,
/// each pair (k,l) with k<l contributing kernel(i_k,i_l) * Q(#_k,#_l), the
/// whole term weighted by t(V). Odd-length words give 0.
pub fn word_moment(w: &Word, kernel: &Kernel, q: &CovarianceQ, t: &Weight) -> QPoly {
    let n = w.len();
    if n == 0 {
        return QPoly::one();
    }
    if n % 2 != 0 {
        return QPoly::zero();
    }
    let mut acc = QPoly::zero();
    for v in enumerate_pairings(n).expect("n even and positive") {
        let mut factor = Rational::one();
        for &(k, l) in v.pairs() {
            let (a, b) = (&w.0[k - 1], &w.0[l - 1]);
            factor *= kernel.eval(a.index, b.index) * q.eval(a.star, b.star);
            if factor.is_zero() {
                break;
            }
        }
        if factor.is_zero() {
            continue;
        }
        acc += &eval_weight(t, &v).scale(&factor);
    }
    acc
}

/// Moments of x = c* + c: m_{2r} = (sum of Q entries)^r * sum over P2(2r)
/// of t(V); odd moments are 0. Returned as m_1..m_order.
pub fn selfadjoint_moments(t: &Weight, order: usize, q: &CovarianceQ) -> Vec<QPoly> {
    let s = q.entry_sum();
    let mut out = Vec::with_capacity(order);
    for n in 1..=order {
        if n % 2 != 0 {
            out.push(QPoly::zero());
            continue;
        }
        let r = n / 2;
        let mut sum = QPoly::zero();
        for v in enumerate_pairings(n).expect("even n") {
            sum += &eval_weight(t, &v);
        }
        let mut scale = Rational::one();
        for _ in 0..r {
            scale *= &s;
        }
        out.push(sum.scale(&scale));
    }
    out
}

/// A Gram certificate: the symbolic matrix plus a PSD verdict per q-point.
#[derive(Debug)]
pub struct GramReport {
    pub dim: usize,
    pub matrix: Vec<Vec<QPoly>>,
    pub verdicts: Vec<(Rational, PsdReport)>,
}

impl GramReport {
    pub fn all_psd(&self) -> bool {
        self.verdicts.iter().all(|(_, r)| r.psd)
    }

    fn from_matrix(matrix: Vec<Vec<QPoly>>, qpoints: &[Rational]) -> GramReport {
        let dim = matrix.len();
        let verdicts = qpoints
            .iter()
            .map(|qp| {
                let numeric: Vec<Vec<Rational>> = matrix
                    .iter()
                    .map(|row| row.iter().map(|p| p.eval(qp)).collect())
                    .collect();
                (qp.clone(), psd_check(&numeric))
            })
            .collect();
        GramReport { dim, matrix, verdicts }
    }
}

/// Gram matrix G_ij = moment(w_i * reverse_starred(w_j)) over a family of
/// words, certified PSD at each q-point.
pub fn word_gram_psd(
    words: &[Word],
    kernel: &Kernel,
    q: &CovarianceQ,
    t: &Weight,
    qpoints: &[Rational],
) -> Result<GramReport, PairweaveError> {
    let m = words.len();
    if m > 200 {
        return Err(PairweaveError::InvalidArgument(
            "word Gram capped at 200 words".into(),
        ));
    }
    let mut matrix = vec![vec![QPoly::zero(); m]; m];
    for i in 0..m {
        for j in i..m {
            let prod = words[i].concat(&words[j].reverse_starred());
            let entry = word_moment(&prod, kernel, q, t);
            matrix[i][j] = entry.clone();
            matrix[j][i] = entry;
        }
    }
    Ok(GramReport::from_matrix(matrix, qpoints))
}

/// Gram of the weight kernel over S_r: entries t(V_{sigma^{-1} pi}).
pub fn symgroup_gram_psd(
    t: &Weight,
    r: usize,
    qpoints: &[Rational],
) -> Result<GramReport, PairweaveError> {
    if r == 0 || r > 5 {
        return Err(PairweaveError::InvalidArgument(
            "symmetric-group Gram supported for 1 <= r <= 5".into(),
        ));
    }
    let perms = enumerate_permutations(r);
    let m = perms.len();
    let mut matrix = vec![vec![QPoly::zero(); m]; m];
    for (i, sigma) in perms.iter().enumerate() {
        let sigma_inv = sigma.inverse();
        for (j, pi) in perms.iter().enumerate() {
            let v = sigma_inv.compose(pi).embed();
            matrix[i][j] = eval_weight(t, &v);
        }
    }
    Ok(GramReport::from_matrix(matrix, qpoints))
}

/// Hankel PSD test H_ij = m_{i+j} (0 <= i,j <= order/2, m_0 = 1): a
/// necessary condition for a sequence to be the moments of a measure.
pub fn hankel_psd(moments: &[Rational]) -> Result<PsdReport, PairweaveError> {
    let order = moments.len();
    if order == 0 || order % 2 != 0 {
        return Err(PairweaveError::InvalidArgument(
            "hankel test needs an even-length moment prefix m_1..m_2s".into(),
        ));
    }
    let s = order / 2;
    let get = |k: usize| -> Rational {
        if k == 0 {
            Rational::one()
        } else {
            moments[k - 1].clone()
        }
    };
    let h: Vec<Vec<Rational>> = (0..=s)
        .map(|i| (0..=s).map(|j| get(i + j)).collect())
        .collect();
    Ok(psd_check(&h))
}
