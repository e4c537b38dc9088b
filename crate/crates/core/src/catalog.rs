//! Named lattices (U, ADE root lattices in the negative-definite
//! convention, C₈⁶, the K3 lattice), embeddings into E₈ and the K3 lattice,
//! orthogonal complements, and identification of Gram matrices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{det_exact, integer_kernel, is_saturated, IntMatrix};
use crate::picard::{DiscriminantForm, GramLattice};

/// Indecomposable summands of a named lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    U,
    A(usize),
    D(usize),
    E(usize),
    C86,
    /// Rank-one lattice `⟨k⟩` with `k` even and negative.
    Scalar(i64),
}

impl Atom {
    pub fn rank(&self) -> usize {
        match *self {
            Atom::U | Atom::C86 => 2,
            Atom::A(n) | Atom::D(n) | Atom::E(n) => n,
            Atom::Scalar(_) => 1,
        }
    }

    /// Canonical Gram matrix. Root lattices are the negated Cartan matrices
    /// in Bourbaki numbering.
    pub fn gram_rows(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut g = vec![vec![0i64; n]; n];
        let link = |g: &mut Vec<Vec<i64>>, a: usize, b: usize| {
            g[a][b] = 1;
            g[b][a] = 1;
        };
        match *self {
            Atom::U => return vec![vec![0, 1], vec![1, 0]],
            Atom::C86 => return vec![vec![-4, 1], vec![1, -2]],
            Atom::Scalar(k) => return vec![vec![k]],
            Atom::A(_) => {
                for i in 1..n {
                    link(&mut g, i - 1, i);
                }
            }
            Atom::D(_) => {
                for i in 1..n - 1 {
                    link(&mut g, i - 1, i);
                }
                link(&mut g, n - 3, n - 1);
            }
            Atom::E(_) => {
                // α1-α3-α4-...-αn with α2 attached to α4
                link(&mut g, 0, 2);
                link(&mut g, 1, 3);
                for i in 3..n {
                    link(&mut g, i - 1, i);
                }
            }
        }
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = -2;
        }
        g
    }

    fn valid(&self) -> bool {
        match *self {
            Atom::A(n) => n >= 1,
            Atom::D(n) => n >= 4,
            Atom::E(n) => (6..=8).contains(&n),
            Atom::Scalar(k) => k < 0 && k % 2 == 0,
            Atom::U | Atom::C86 => true,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::U => write!(f, "U"),
            Atom::A(n) => write!(f, "A{n}"),
            Atom::D(n) => write!(f, "D{n}"),
            Atom::E(n) => write!(f, "E{n}"),
            Atom::C86 => write!(f, "C86"),
            Atom::Scalar(k) => write!(f, "({k})"),
        }
    }
}

/// Direct sum of atoms. The empty sum is the zero lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct NamedLattice {
    atoms: Vec<Atom>,
}

impl NamedLattice {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if let Some(a) = atoms.iter().find(|a| !a.valid()) {
            return Err(Error::Parse(format!("{a:?}")));
        }
        Ok(Self { atoms })
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `U³ ⊕ E₈²` in that block order.
    pub fn k3() -> Self {
        Self {
            atoms: vec![Atom::U, Atom::U, Atom::U, Atom::E(8), Atom::E(8)],
        }
    }

    pub fn atom(a: Atom) -> Self {
        Self { atoms: vec![a] }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn rank(&self) -> usize {
        self.atoms.iter().map(Atom::rank).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn plus(&self, other: &NamedLattice) -> NamedLattice {
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        NamedLattice { atoms }
    }

    /// Block-diagonal Gram matrix of the atoms in order.
    pub fn gram_matrix(&self) -> IntMatrix {
        let blocks: Vec<IntMatrix> = self
            .atoms
            .iter()
            .map(|a| IntMatrix::from_rows(&a.gram_rows()).expect("atom grams are square"))
            .collect();
        IntMatrix::block_diag(&blocks)
    }

    /// Offset of the `i`-th atom's block in the Gram matrix.
    pub fn block_offset(&self, i: usize) -> usize {
        self.atoms[..i].iter().map(Atom::rank).sum()
    }
}

pub fn gram_of(n: &NamedLattice) -> GramLattice {
    if n.is_zero() {
        return GramLattice::zero();
    }
    GramLattice::new(n.gram_matrix()).expect("named lattices are even and nondegenerate")
}

impl fmt::Display for NamedLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.atoms.iter().map(Atom::to_string).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for NamedLattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let cleaned = s.replace('⊕', "+");
        let mut atoms = Vec::new();
        for tok in cleaned.split('+') {
            let t: String = tok.chars().filter(|c| !c.is_whitespace()).collect();
            let upper = t.to_ascii_uppercase();
            let num = |p: &str| upper.strip_prefix(p).and_then(|r| r.parse::<usize>().ok());
            match upper.as_str() {
                "" => return Err(bad()),
                "0" => {}
                "U" => atoms.push(Atom::U),
                "K3" => atoms.extend(NamedLattice::k3().atoms),
                "C86" | "C_8^6" | "C8^6" => atoms.push(Atom::C86),
                "MINUS4" => atoms.push(Atom::Scalar(-4)),
                "MINUS8" => atoms.push(Atom::Scalar(-8)),
                _ => {
                    if let Some(inner) = upper.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
                        atoms.push(Atom::Scalar(inner.parse().map_err(|_| bad())?));
                    } else if let Some(n) = num("A") {
                        atoms.push(Atom::A(n));
                    } else if let Some(n) = num("D") {
                        atoms.push(Atom::D(n));
                    } else if let Some(n) = num("E") {
                        atoms.push(Atom::E(n));
                    } else {
                        return Err(bad());
                    }
                }
            }
        }
        NamedLattice::new(atoms).map_err(|_| bad())
    }
}

/// Orthogonal complement in E₈ of a primitively embedded root lattice.
pub fn nishiyama_complement(t: Atom) -> Result<NamedLattice> {
    let a = |x| NamedLattice::atom(x);
    Ok(match t {
        Atom::A(1) => a(Atom::E(7)),
        Atom::A(2) => a(Atom::E(6)),
        Atom::A(3) => a(Atom::D(5)),
        Atom::A(4) => a(Atom::A(4)),
        Atom::A(5) => NamedLattice {
            atoms: vec![Atom::A(1), Atom::A(2)],
        },
        Atom::A(6) => a(Atom::C86),
        Atom::A(7) => a(Atom::Scalar(-8)),
        Atom::D(4) => a(Atom::D(4)),
        Atom::D(5) => a(Atom::A(3)),
        Atom::D(6) => NamedLattice {
            atoms: vec![Atom::A(1), Atom::A(1)],
        },
        Atom::D(7) => a(Atom::Scalar(-4)),
        Atom::E(6) => a(Atom::A(2)),
        Atom::E(7) => a(Atom::A(1)),
        other => return Err(Error::Unsupported(format!("no complement table entry for {other}"))),
    })
}

fn i64_rows(g: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    g.to_i64_rows()
        .ok_or_else(|| Error::Unsupported("Gram entries exceed 64 bits".into()))
}

/// All `x` with `xᵀGx = norm` for negative-definite `G`.
///
/// Fincke–Pohst enumeration on `-G = RᵀDR` (R unit upper triangular). The
/// decomposition is exact; its floating images only bound the search box,
/// widened by a margin, and every hit is confirmed in integers.
pub fn vectors_of_norm(l: &GramLattice, norm: i64) -> Result<Vec<Vec<i64>>> {
    if !l.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    let n = l.rank();
    let g = i64_rows(l.gram())?;
    let target = -norm;
    if target <= 0 || n == 0 {
        return Ok(Vec::new());
    }
    let q = |i: usize, j: usize| BigRational::from_integer(BigInt::from(-g[i][j]));
    let mut d = vec![BigRational::zero(); n];
    let mut r = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let mut di = q(i, i);
        for k in 0..i {
            di -= &r[k][i] * &r[k][i] * &d[k];
        }
        d[i] = di;
        for j in i + 1..n {
            let mut v = q(i, j);
            for k in 0..i {
                v -= &r[k][i] * &r[k][j] * &d[k];
            }
            r[i][j] = v / &d[i];
        }
    }
    let df: Vec<f64> = d.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    let rf: Vec<Vec<f64>> = r
        .iter()
        .map(|row| row.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
        .collect();

    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    enumerate_level(n, &df, &rf, &g, target as f64, norm, &mut x, &mut out);
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_level(
    level: usize,
    d: &[f64],
    r: &[Vec<f64>],
    g: &[Vec<i64>],
    budget: f64,
    norm: i64,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    const SLACK: f64 = 1e-6;
    if level == 0 {
        if x.iter().any(|&v| v != 0) && quad(g, x) == norm {
            out.push(x.clone());
        }
        return;
    }
    let i = level - 1;
    let c: f64 = (i + 1..x.len()).map(|j| r[i][j] * x[j] as f64).sum();
    let w = ((budget + SLACK).max(0.0) / d[i]).sqrt();
    let lo = (-c - w - SLACK).ceil() as i64;
    let hi = (-c + w + SLACK).floor() as i64;
    for v in lo..=hi {
        x[i] = v;
        let t = v as f64 + c;
        let rest = budget - d[i] * t * t;
        if rest < -SLACK {
            continue;
        }
        enumerate_level(i, d, r, g, rest, norm, x, out);
    }
    x[i] = 0;
}

fn quad(g: &[Vec<i64>], x: &[i64]) -> i64 {
    let mut s = 0i64;
    for i in 0..x.len() {
        if x[i] == 0 {
            continue;
        }
        let row: i64 = (0..x.len()).map(|j| g[i][j] * x[j]).sum();
        s += x[i] * row;
    }
    s
}

fn pair(g: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut s = 0i64;
    for i in 0..x.len() {
        if x[i] == 0 {
            continue;
        }
        let row: i64 = (0..y.len()).map(|j| g[i][j] * y[j]).sum();
        s += x[i] * row;
    }
    s
}

/// Roots (norm -2 vectors) of a negative-definite lattice, sorted.
pub fn roots_of(l: &GramLattice) -> Result<Vec<Vec<i64>>> {
    vectors_of_norm(l, -2)
}

/// A sublattice of an ambient lattice given by basis vectors in ambient
/// coordinates, with a saturated basis of its orthogonal complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingWitness {
    pub ambient: NamedLattice,
    pub sub_basis: IntMatrix,
    pub complement_basis: IntMatrix,
}

impl EmbeddingWitness {
    /// Builds the witness, computing the complement.
    pub fn new(ambient: NamedLattice, sub_basis: IntMatrix) -> Result<Self> {
        if sub_basis.cols() != ambient.rank() {
            return Err(Error::Dimension(format!(
                "sub basis has {} coordinates, ambient rank is {}",
                sub_basis.cols(),
                ambient.rank()
            )));
        }
        let g = ambient.gram_matrix();
        let complement_basis = integer_kernel(&(&sub_basis * &g));
        Ok(Self {
            ambient,
            sub_basis,
            complement_basis,
        })
    }

    pub fn sub_gram(&self) -> Result<GramLattice> {
        if self.sub_basis.rows() == 0 {
            return Ok(GramLattice::zero());
        }
        GramLattice::new(self.ambient.gram_matrix().congruent(&self.sub_basis.transpose()))
    }

    pub fn is_primitive(&self) -> bool {
        self.sub_basis.rows() == 0 || is_saturated(&self.sub_basis)
    }

    /// The complement vectors pair to zero with the sub basis and are
    /// saturated.
    pub fn is_consistent(&self) -> bool {
        let g = self.ambient.gram_matrix();
        let cross = &(&self.sub_basis * &g) * &self.complement_basis.transpose();
        let orthogonal = (0..cross.rows()).all(|i| (0..cross.cols()).all(|j| cross[(i, j)].is_zero()));
        orthogonal && (self.complement_basis.rows() == 0 || is_saturated(&self.complement_basis))
    }
}

pub fn orthogonal_complement(w: &EmbeddingWitness) -> Result<GramLattice> {
    w.sub_gram()?;
    if w.complement_basis.rows() == 0 {
        return Ok(GramLattice::zero());
    }
    GramLattice::new(w.ambient.gram_matrix().congruent(&w.complement_basis.transpose()))
}

/// Finds vectors of a negative-definite ambient lattice with the given
/// Gram matrix spanning a primitive sublattice. Candidates for each basis
/// vector are tried in lexicographic order and the first primitive hit is
/// returned.
pub fn embed_gram(ambient: &GramLattice, target: &IntMatrix) -> Result<IntMatrix> {
    let t = i64_rows(target)?;
    let n = t.len();
    if n == 0 {
        return Ok(IntMatrix::zeros(0, ambient.rank()));
    }
    let g = i64_rows(ambient.gram())?;
    let mut pools: Vec<Vec<Vec<i64>>> = Vec::new();
    for i in 0..n {
        match (0..i).find(|&j| t[j][j] == t[i][i]) {
            Some(j) => pools.push(pools[j].clone()),
            None => pools.push(vectors_of_norm(ambient, t[i][i])?),
        }
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    if extend(&g, &t, &pools, &mut chosen) {
        let rows: Vec<Vec<i64>> = chosen.iter().enumerate().map(|(k, &c)| pools[k][c].clone()).collect();
        return IntMatrix::from_rows(&rows);
    }
    Err(Error::NoEmbedding(format!("{target}")))
}

fn extend(g: &[Vec<i64>], t: &[Vec<i64>], pools: &[Vec<Vec<i64>>], chosen: &mut Vec<usize>) -> bool {
    let k = chosen.len();
    if k == t.len() {
        let rows: Vec<Vec<i64>> = chosen.iter().enumerate().map(|(i, &c)| pools[i][c].clone()).collect();
        return is_saturated(&IntMatrix::from_rows(&rows).expect("rectangular"));
    }
    for c in 0..pools[k].len() {
        let v = &pools[k][c];
        let fits = (0..k).all(|j| pair(g, &pools[j][chosen[j]], v) == t[j][k]);
        if !fits {
            continue;
        }
        chosen.push(c);
        if extend(g, t, pools, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Primitive embedding of a negative-definite named lattice into E₈.
pub fn embed_in_e8(n: &NamedLattice) -> Result<EmbeddingWitness> {
    let e8 = NamedLattice::atom(Atom::E(8));
    if n.atoms().contains(&Atom::U) {
        return Err(Error::Unsupported(format!("{n} is not negative definite")));
    }
    let basis = embed_gram(&gram_of(&e8), &n.gram_matrix()).map_err(|_| Error::NoEmbedding(format!("{n} in E8")))?;
    EmbeddingWitness::new(e8, basis)
}

/// Embeds `sub` into `ambient`: the U summands of `sub` go verbatim onto the
/// leading U blocks of `ambient`, and the remaining summands are embedded
/// together into the first E₈ block.
pub fn embed_named(ambient: &NamedLattice, sub: &NamedLattice) -> Result<EmbeddingWitness> {
    let us = sub.atoms().iter().filter(|a| **a == Atom::U).count();
    let rest = NamedLattice::new(sub.atoms().iter().copied().filter(|a| *a != Atom::U).collect())?;
    let u_blocks: Vec<usize> = (0..ambient.atoms().len())
        .filter(|&i| ambient.atoms()[i] == Atom::U)
        .collect();
    if u_blocks.len() < us {
        return Err(Error::NoEmbedding(format!("{sub} in {ambient}: not enough U summands")));
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let n = ambient.rank();
    for &b in &u_blocks[..us] {
        let off = ambient.block_offset(b);
        for k in 0..2 {
            let mut v = vec![BigInt::zero(); n];
            v[off + k] = BigInt::one();
            rows.push(v);
        }
    }
    if !rest.is_zero() {
        let e8 = ambient
            .atoms()
            .iter()
            .position(|a| *a == Atom::E(8))
            .ok_or_else(|| Error::NoEmbedding(format!("{sub} in {ambient}: no E8 summand")))?;
        let off = ambient.block_offset(e8);
        let inner = embed_in_e8(&rest)?;
        for r in inner.sub_basis.row_vecs() {
            let mut v = vec![BigInt::zero(); n];
            for (k, x) in r.into_iter().enumerate() {
                v[off + k] = x;
            }
            rows.push(v);
        }
    }
    let basis = IntMatrix::from_big_rows(&rows, n)?;
    let w = EmbeddingWitness::new(ambient.clone(), basis)?;
    if w.sub_gram()?.gram() != &sub.gram_matrix() && !sub.is_zero() {
        return Err(Error::NoEmbedding(format!("{sub} in {ambient}")));
    }
    Ok(w)
}

/// Invariants compared by the first identification tier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub rank: usize,
    pub signature: (usize, usize),
    pub abs_det: BigInt,
    pub invariant_factors: Vec<BigInt>,
    pub q_multiset: Option<Vec<BigRational>>,
}

pub fn invariants(l: &GramLattice) -> Invariants {
    let form = l.discriminant_form();
    Invariants {
        rank: l.rank(),
        signature: l.signature(),
        abs_det: l.det().abs(),
        invariant_factors: form.invariant_factors.clone(),
        q_multiset: form.q_multiset(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tier {
    NoMatch,
    Invariants,
    Congruence,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::NoMatch => "no match",
            Tier::Invariants => "invariants match",
            Tier::Congruence => "congruent",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub candidate: NamedLattice,
    pub tier: Tier,
    /// `P` with `Pᵀ·G·P` equal to the candidate's Gram matrix.
    pub witness: Option<IntMatrix>,
}

pub const DEFAULT_SEARCH_BOUND: i64 = 10;
/// Congruence search is attempted up to this rank.
pub const CONGRUENCE_MAX_RANK: usize = 4;

pub fn identify(l: &GramLattice, candidates: &[NamedLattice], search_bound: i64) -> Vec<Verdict> {
    let inv = invariants(l);
    candidates
        .iter()
        .map(|c| {
            let cg = gram_of(c);
            if invariants(&cg) != inv {
                return Verdict {
                    candidate: c.clone(),
                    tier: Tier::NoMatch,
                    witness: None,
                };
            }
            let witness = if l.rank() <= CONGRUENCE_MAX_RANK {
                congruence_search(l.gram(), cg.gram(), search_bound)
            } else {
                None
            };
            Verdict {
                candidate: c.clone(),
                tier: if witness.is_some() { Tier::Congruence } else { Tier::Invariants },
                witness,
            }
        })
        .collect()
}

/// Searches for a unimodular `P` with `Pᵀ·G·P = T`, columns of `P` taken
/// from `[-bound, bound]ⁿ` in order of increasing size.
pub fn congruence_search(g: &IntMatrix, t: &IntMatrix, bound: i64) -> Option<IntMatrix> {
    let n = g.rows();
    if t.rows() != n || bound < 0 {
        return None;
    }
    if n == 0 {
        return Some(IntMatrix::zeros(0, 0));
    }
    let gi = g.to_i64_rows()?;
    let ti = t.to_i64_rows()?;
    let side = (2 * bound + 1) as usize;
    let total = side.checked_pow(n as u32)?;
    let mut boxed: Vec<Vec<i64>> = Vec::with_capacity(total);
    for mut k in 0..total {
        let mut v = vec![0i64; n];
        for c in v.iter_mut() {
            *c = (k % side) as i64 - bound;
            k /= side;
        }
        boxed.push(v);
    }
    boxed.sort_by_key(|v| {
        let max = v.iter().map(|x| x.abs()).max().unwrap_or(0);
        let l1: i64 = v.iter().map(|x| x.abs()).sum();
        (max, l1, v.clone())
    });
    let pools: Vec<Vec<Vec<i64>>> = (0..n)
        .map(|i| {
            boxed
                .iter()
                .filter(|v| quad(&gi, v) == ti[i][i] && gcd_all(v) == 1)
                .cloned()
                .collect()
        })
        .collect();
    let mut chosen: Vec<&[i64]> = Vec::with_capacity(n);
    if congruence_extend(&gi, &ti, &pools, &mut chosen) {
        let mut p = IntMatrix::zeros(n, n);
        for (j, col) in chosen.iter().enumerate() {
            for i in 0..n {
                p[(i, j)] = BigInt::from(col[i]);
            }
        }
        return Some(p);
    }
    None
}

fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |a, &b| num_integer::gcd(a, b))
}

fn congruence_extend<'a>(
    g: &[Vec<i64>],
    t: &[Vec<i64>],
    pools: &'a [Vec<Vec<i64>>],
    chosen: &mut Vec<&'a [i64]>,
) -> bool {
    let k = chosen.len();
    if k == t.len() {
        let rows: Vec<Vec<i64>> = chosen.iter().map(|c| c.to_vec()).collect();
        let m = IntMatrix::from_rows(&rows).expect("square");
        return det_exact(&m).map(|d| d.abs().is_one()).unwrap_or(false);
    }
    for v in &pools[k] {
        if (0..k).all(|j| pair(g, chosen[j], v) == t[j][k]) {
            chosen.push(v);
            if congruence_extend(g, t, pools, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Component checks of the discriminant-form mirror criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorCheck {
    pub factors_agree: bool,
    pub forms_negated: bool,
    pub signatures_complement: bool,
}

impl MirrorCheck {
    pub fn holds(&self) -> bool {
        self.factors_agree && self.forms_negated && self.signatures_complement
    }
}

pub fn mirror_check(a: &GramLattice, b: &GramLattice) -> MirrorCheck {
    let fa: DiscriminantForm = a.discriminant_form();
    let fb = b.discriminant_form();
    let forms_negated = match (fa.q_multiset(), fb.negated_q_multiset()) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    };
    let (sa, sb) = (a.signature(), b.signature());
    MirrorCheck {
        factors_agree: fa.invariant_factors == fb.invariant_factors,
        forms_negated,
        signatures_complement: sa.0 + sb.0 == 3 && sa.1 + sb.1 == 19,
    }
}

pub fn mirror_criterion(a: &GramLattice, b: &GramLattice) -> bool {
    mirror_check(a, b).holds()
}
