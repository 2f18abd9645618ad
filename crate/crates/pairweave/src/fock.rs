//! The blocked Fock representation: n-particle basis vectors carry a set of
//! separation points recording how the particles are grouped into connected
//! blocks, the deformed inner product counts the prefix stabilities shared
//! by both separation sets, and the creation/annihilation pair realizes the
//! connected-component weight as a vacuum expectation. A signed variant
//! covers the negative parameter regime.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use crate::error::PairweaveError;
use crate::linalg::{psd_exact_ldl, PsdReport};
use crate::pairings::enumerate_permutations;
use crate::scalar::{QPoly, Rational};
use crate::states::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// 0 <= q <= 1.
    Nonneg,
    /// -1 <= q <= 0; applies the sign twists to the annihilator and the
    /// inner product.
    Signed,
}

/// Basis vector (f_{i1} x ... x f_{in}, A): indices into an orthonormal
/// self-conjugate generator family plus separation points A, numbered right
/// to left within {1..n-1}.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockedBasis {
    pub indices: Vec<usize>,
    pub seps: BTreeSet<usize>,
}

impl BlockedBasis {
    pub fn new(indices: Vec<usize>, seps: BTreeSet<usize>) -> Result<Self, PairweaveError> {
        let n = indices.len();
        if n == 0 {
            return Err(PairweaveError::InvalidArgument(
                "basis vector needs at least one particle".into(),
            ));
        }
        if seps.iter().any(|&s| s == 0 || s >= n) {
            return Err(PairweaveError::InvalidArgument(format!(
                "separation set {seps:?} out of range for n={n}"
            )));
        }
        Ok(BlockedBasis { indices, seps })
    }

    pub fn n(&self) -> usize {
        self.indices.len()
    }
}

/// Formal linear combination of blocked basis vectors with polynomial
/// coefficients, plus a distinguished vacuum component.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FockVector {
    vacuum: QPoly,
    terms: BTreeMap<BlockedBasis, QPoly>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    pub fn vacuum() -> Self {
        FockVector {
            vacuum: QPoly::one(),
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(b: BlockedBasis) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(b, QPoly::one());
        FockVector {
            vacuum: QPoly::zero(),
            terms,
        }
    }

    pub fn vacuum_component(&self) -> &QPoly {
        &self.vacuum
    }

    pub fn terms(&self) -> &BTreeMap<BlockedBasis, QPoly> {
        &self.terms
    }

    fn add_term(&mut self, b: BlockedBasis, c: QPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.vacuum += &other.vacuum;
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &QPoly) -> FockVector {
        if c.is_zero() {
            return FockVector::zero();
        }
        FockVector {
            vacuum: &self.vacuum * c,
            terms: self.terms.iter().map(|(b, v)| (b.clone(), v * c)).collect(),
        }
    }
}

fn sign(exp: usize) -> Rational {
    if exp % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// b(pi) for pi in S_n: {n-k | pi fixes {1..k} setwise, 1 <= k <= n-1}.
fn b_set_of_images(images: &[usize]) -> BTreeSet<usize> {
    let n = images.len();
    let mut out = BTreeSet::new();
    for k in 1..n {
        if images[..k].iter().all(|&v| v <= k) {
            out.insert(n - k);
        }
    }
    out
}

fn inversions(images: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..images.len() {
        for j in (i + 1)..images.len() {
            if images[i] > images[j] {
                c += 1;
            }
        }
    }
    c
}

/// Inner product of two basis vectors of equal particle count: the sum over
/// index-matching permutations of q^((n-1) - #[A ∩ B ∩ b(pi)]), with the
/// signed regime contributing (-q)^(...) * (-1)^(#I(pi)) instead.
fn basis_inner(a: &BlockedBasis, b: &BlockedBasis, regime: Regime) -> QPoly {
    if a.n() != b.n() {
        return QPoly::zero();
    }
    let n = a.n();
    let meet: BTreeSet<usize> = a.seps.intersection(&b.seps).copied().collect();
    let mut acc = QPoly::zero();
    for pi in enumerate_permutations(n) {
        let images = pi.images();
        // <f_k, g_{pi(k)}> for an orthonormal family: all indices must match
        if (0..n).any(|k| a.indices[k] != b.indices[images[k] - 1]) {
            continue;
        }
        let stable = meet
            .iter()
            .filter(|&&k| b_set_of_images(images).contains(&k))
            .count();
        let e = (n - 1) - stable;
        let coeff = match regime {
            Regime::Nonneg => Rational::one(),
            Regime::Signed => sign(e + inversions(images)),
        };
        acc += &QPoly::monomial(coeff, e);
    }
    acc
}

/// Bilinear extension of the deformed inner product; the vacuum is
/// orthogonal to every n-particle vector and has norm 1.
pub fn inner_product(u: &FockVector, v: &FockVector, regime: Regime) -> QPoly {
    let mut acc = &u.vacuum * &v.vacuum;
    for (a, ca) in &u.terms {
        for (b, cb) in &v.terms {
            if a.n() != b.n() {
                continue;
            }
            let base = basis_inner(a, b, regime);
            if base.is_zero() {
                continue;
            }
            acc += &(&(ca * cb) * &base);
        }
    }
    acc
}

/// c*(f_i): prepend the particle and mark the old block boundary.
pub fn create(index: usize, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    if !v.vacuum.is_zero() {
        let b = BlockedBasis::new(vec![index], BTreeSet::new()).unwrap();
        out.add_term(b, v.vacuum.clone());
    }
    for (basis, coeff) in &v.terms {
        let n = basis.n();
        let mut indices = Vec::with_capacity(n + 1);
        indices.push(index);
        indices.extend_from_slice(&basis.indices);
        let mut seps = basis.seps.clone();
        seps.insert(n);
        out.add_term(BlockedBasis::new(indices, seps).unwrap(), coeff.clone());
    }
    out
}

/// c(f_i): annihilate every matching particle. Position 1 eats a marked
/// boundary for free; every other position costs a factor q (signed regime:
/// -q together with the position sign (-1)^(p-1)).
pub fn annihilate(index: usize, v: &FockVector, regime: Regime) -> FockVector {
    let mut out = FockVector::zero();
    for (basis, coeff) in &v.terms {
        let n = basis.n();
        if n == 1 {
            if basis.indices[0] == index {
                out.vacuum += coeff;
            }
            continue;
        }
        for p in 1..=n {
            if basis.indices[p - 1] != index {
                continue;
            }
            let boundary = p == 1 && basis.seps.contains(&(n - 1));
            let z = if boundary { 0 } else { 1 };
            let new_seps: BTreeSet<usize> = if boundary {
                basis.seps.iter().copied().filter(|&s| s != n - 1).collect()
            } else {
                basis.seps.iter().copied().filter(|&s| s <= n - p).collect()
            };
            let mut new_indices = basis.indices.clone();
            new_indices.remove(p - 1);
            let factor = match regime {
                Regime::Nonneg => QPoly::monomial(Rational::one(), z),
                Regime::Signed => QPoly::monomial(sign(z + p - 1), z),
            };
            out.add_term(
                BlockedBasis::new(new_indices, new_seps).unwrap(),
                coeff * &factor,
            );
        }
    }
    out
}

/// Adjointness of creation and annihilation: <c*(f) u, v> = <u, c(f) v>, exactly.
pub fn adjoint_identity_check(
    index: usize,
    u: &FockVector,
    v: &FockVector,
    regime: Regime,
) -> bool {
    let lhs = inner_product(&create(index, u), v, regime);
    let rhs = inner_product(u, &annihilate(index, v, regime), regime);
    lhs == rhs
}

/// All blocked basis vectors with n particles over indices {1..index_count},
/// lexicographic in (index tuple, separation bitmask). This is the row
/// order of `fock_gram_psd`.
pub fn enumerate_basis(n: usize, index_count: usize) -> Vec<BlockedBasis> {
    let mut out = Vec::new();
    let mut indices = vec![1usize; n];
    loop {
        for mask in 0u32..(1 << (n - 1)) {
            let seps: BTreeSet<usize> =
                (1..n).filter(|&k| mask & (1 << (k - 1)) != 0).collect();
            out.push(BlockedBasis::new(indices.clone(), seps).unwrap());
        }
        // next index tuple, rightmost digit fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if indices[pos] < index_count {
                indices[pos] += 1;
                for x in indices[pos + 1..].iter_mut() {
                    *x = 1;
                }
                break;
            }
        }
    }
}

#[derive(Debug)]
pub struct FockGramReport {
    pub dim: usize,
    pub basis: Vec<BlockedBasis>,
    pub matrix: Vec<Vec<QPoly>>,
    pub verdicts: Vec<(Rational, PsdReport)>,
}

impl FockGramReport {
    pub fn all_psd(&self) -> bool {
        self.verdicts.iter().all(|(_, r)| r.psd)
    }
}

/// Gram certificate over the full n-particle blocked basis.
pub fn fock_gram_psd(
    n: usize,
    index_count: usize,
    qpoints: &[Rational],
    regime: Regime,
) -> Result<FockGramReport, PairweaveError> {
    if n == 0 || index_count == 0 {
        return Err(PairweaveError::InvalidArgument(
            "need n >= 1 and at least one index".into(),
        ));
    }
    let dim_estimate = index_count.pow(n as u32) * (1usize << (n - 1));
    if dim_estimate > 2048 {
        return Err(PairweaveError::InvalidArgument(format!(
            "fock Gram dimension {dim_estimate} exceeds the cap"
        )));
    }
    let basis = enumerate_basis(n, index_count);
    let dim = basis.len();
    let mut matrix = vec![vec![QPoly::zero(); dim]; dim];
    for i in 0..dim {
        for j in i..dim {
            let entry = basis_inner(&basis[i], &basis[j], regime);
            matrix[i][j] = entry.clone();
            matrix[j][i] = entry;
        }
    }
    // always exact here: the verdict is the whole point of the certificate,
    // and rational q keeps LDL entries exact at any dimension under the cap
    let verdicts = qpoints
        .iter()
        .map(|qp| {
            let numeric: Vec<Vec<Rational>> = matrix
                .iter()
                .map(|row| row.iter().map(|p| p.eval(qp)).collect())
                .collect();
            (qp.clone(), psd_exact_ldl(&numeric))
        })
        .collect();
    Ok(FockGramReport {
        dim,
        basis,
        matrix,
        verdicts,
    })
}

/// Vacuum expectation of a word of creation/annihilation letters: apply the
/// letters right to left to the vacuum and read off the vacuum component.
pub fn vacuum_moment(w: &Word, regime: Regime) -> QPoly {
    let mut state = FockVector::vacuum();
    for letter in w.0.iter().rev() {
        state = if letter.star {
            create(letter.index, &state)
        } else {
            annihilate(letter.index, &state, regime)
        };
    }
    state.vacuum_component().clone()
}
