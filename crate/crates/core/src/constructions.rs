//! Extremal constructions and exact closed forms for their degree-sum
//! parameters.
//!
//! Every generator places the small side `S` on the lowest labels and the
//! side `T` on the highest ones, and returns the `S`/`T` partition together
//! with the hypergraph.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::combin::{binom, for_each_combination};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex, VertexPartition};

/// Parameters `(n, k, s, ℓ)` of the family whose side `T` has `sℓ - 1`
/// vertices and whose edges are the k-sets meeting `T` in at least `ℓ`
/// vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub ell: usize,
}

impl ConstructionParams {
    pub fn new(n: usize, k: usize, s: usize, ell: usize) -> Result<Self> {
        let p = ConstructionParams { n, k, s, ell };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let &ConstructionParams { n, k, s, ell } = self;
        if k < 2 || n < k {
            return Err(Error::InvalidParams(format!("need n >= k >= 2, got n={n} k={k}")));
        }
        if s < 2 || s * k > n {
            return Err(Error::InvalidParams(format!("need 2 <= s <= n/k, got s={s} n={n} k={k}")));
        }
        if ell < 1 || ell > k {
            return Err(Error::InvalidParams(format!("need 1 <= ell <= k, got ell={ell} k={k}")));
        }
        Ok(())
    }

    pub fn t_size(&self) -> usize {
        self.s * self.ell - 1
    }

    pub fn s_size(&self) -> usize {
        self.n - self.t_size()
    }
}

/// Two-part construction: edges are the k-sets with at least `min_in_t`
/// vertices among the top `t_size` labels.
fn two_part(n: usize, k: usize, t_size: usize, min_in_t: usize) -> (Hypergraph, VertexPartition) {
    let s_size = n - t_size;
    let mut verts = Vec::new();
    for_each_combination(n, k, |c| {
        if c.iter().filter(|&&v| v as usize >= s_size).count() >= min_in_t {
            verts.extend_from_slice(c);
        }
    });
    let h = Hypergraph::from_sorted_flat(n, k, verts);
    let partition = VertexPartition::new(
        n,
        vec![
            ("S", (0..s_size as Vertex).collect()),
            ("T", (s_size as Vertex..n as Vertex).collect()),
        ],
    )
    .expect("S and T are disjoint");
    (h, partition)
}

/// H*: `|S| = n/3 + 1`, `|T| = 2n/3 - 1`, edges are the triples meeting `T`
/// at least twice.
pub fn h_star(n: usize) -> Result<(Hypergraph, VertexPartition)> {
    if !n.is_multiple_of(3) {
        return Err(Error::Divisibility { n, divisor: 3 });
    }
    if n < 6 {
        return Err(Error::InvalidParams(format!("H* needs n >= 6, got {n}")));
    }
    Ok(two_part(n, 3, 2 * n / 3 - 1, 2))
}

pub fn h_nkls(p: &ConstructionParams) -> Result<(Hypergraph, VertexPartition)> {
    p.validate()?;
    Ok(two_part(p.n, p.k, p.t_size(), p.ell))
}

/// All triples through vertex 0.
pub fn full_star(n: usize) -> Result<Hypergraph> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("full star needs n >= 3, got {n}")));
    }
    let mut verts = Vec::new();
    for_each_combination(n, 3, |c| {
        if c[0] == 0 {
            verts.extend_from_slice(c);
        }
    });
    Ok(Hypergraph::from_sorted_flat(n, 3, verts))
}

/// Complete k-graph on `n` vertices.
pub fn complete(n: usize, k: usize) -> Result<Hypergraph> {
    if k < 2 || k > n {
        return Err(Error::InvalidParams(format!("complete graph needs 2 <= k <= n, got n={n} k={k}")));
    }
    let mut verts = Vec::new();
    for_each_combination(n, k, |c| verts.extend_from_slice(c));
    Ok(Hypergraph::from_sorted_flat(n, k, verts))
}

/// Which closed form to evaluate for the adjacent-pair degree-sum minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClosedForm {
    /// H* (k = 3, s = n/3, ℓ = 2): `2n²/3 - 8n/3 + 2`.
    HStar,
    /// ℓ = 1: `2(C(n-1, k-1) - C(n-s, k-1))`.
    EllOne,
    /// k = 3, ℓ = 2: `(2s - 2)(n - 1)`.
    EllTwoCubic,
    /// k = 3, ℓ = 3: `2·C(3s - 2, 2)`.
    EllThreeCubic,
    /// ℓ = k: `2·C(sk - 2, k - 1)`.
    EllK,
    /// ℓ = k - 1: `2·C(s(k-1) - 2, k - 1) + (n - s(k-1) + 2)·C(s(k-1) - 2, k - 2)`.
    EllKMinusOne,
    /// 1 <= ℓ <= k - 2, where all pairs are adjacent: twice the minimum degree.
    EllGeneric,
}

impl ClosedForm {
    /// The closed form that applies to `p`, preferring the named special
    /// cases.
    pub fn for_params(p: &ConstructionParams) -> ClosedForm {
        match (p.k, p.ell) {
            (k, 1) if k >= 3 => ClosedForm::EllOne,
            (3, 2) => ClosedForm::EllTwoCubic,
            (3, 3) => ClosedForm::EllThreeCubic,
            (k, l) if l == k => ClosedForm::EllK,
            (k, l) if l + 1 == k => ClosedForm::EllKMinusOne,
            _ => ClosedForm::EllGeneric,
        }
    }
}

fn big(x: usize) -> BigInt {
    BigInt::from(x)
}

/// Exact `σ₂′` of the construction described by `form` and `p`.
pub fn sigma2_prime_closed(form: ClosedForm, p: &ConstructionParams) -> Result<BigInt> {
    p.validate()?;
    let mismatch = |what: &str| Err(Error::InvalidParams(format!("{form:?} requires {what}, got {p:?}")));
    let (n, k, s, ell) = (p.n as i64, p.k as i64, p.s as i64, p.ell as i64);
    match form {
        ClosedForm::HStar => {
            if p.k != 3 || p.ell != 2 || !p.n.is_multiple_of(3) || p.s * 3 != p.n {
                return mismatch("k = 3, ell = 2, s = n/3");
            }
            Ok((big(2) * big(p.n) * big(p.n) - big(8) * big(p.n) + big(6)) / big(3))
        }
        ClosedForm::EllOne => {
            if ell != 1 || k < 3 {
                return mismatch("ell = 1 and k >= 3");
            }
            Ok(big(2) * (binom(n - 1, k - 1) - binom(n - s, k - 1)))
        }
        ClosedForm::EllTwoCubic => {
            if k != 3 || ell != 2 {
                return mismatch("k = 3, ell = 2");
            }
            Ok(big(2 * p.s - 2) * big(p.n - 1))
        }
        ClosedForm::EllThreeCubic => {
            if k != 3 || ell != 3 {
                return mismatch("k = 3, ell = 3");
            }
            Ok(big(2) * binom(3 * s - 2, 2))
        }
        ClosedForm::EllK => {
            if ell != k {
                return mismatch("ell = k");
            }
            Ok(big(2) * binom(s * k - 2, k - 1))
        }
        ClosedForm::EllKMinusOne => {
            if ell + 1 != k {
                return mismatch("ell = k - 1");
            }
            let t = s * (k - 1) - 2;
            Ok(big(2) * binom(t, k - 1) + BigInt::from(n - s * (k - 1) + 2) * binom(t, k - 2))
        }
        ClosedForm::EllGeneric => {
            if ell < 1 || ell > k - 2 {
                return mismatch("1 <= ell <= k - 2");
            }
            Ok(big(2) * min_degree_closed(p))
        }
    }
}

/// Exact minimum vertex degree of the `(n, k, s, ℓ)` construction.
pub fn min_degree_closed(p: &ConstructionParams) -> BigInt {
    let (n, k, ell) = (p.n as i64, p.k as i64, p.ell as i64);
    let t = p.t_size() as i64;
    let s_side = n - t;
    // an S-vertex needs at least ℓ of its k-1 partners in T
    let deg_s: BigInt = (ell..k)
        .map(|j| binom(t, j) * binom(s_side - 1, k - 1 - j))
        .sum();
    // a T-vertex needs at least ℓ-1 further partners in T
    let deg_t: BigInt = (ell - 1..k)
        .map(|j| binom(t - 1, j) * binom(s_side, k - 1 - j))
        .sum();
    if s_side >= 1 {
        deg_s.min(deg_t)
    } else {
        deg_t
    }
}

/// Dirac threshold reference value `C(n-1, 2) - C(2n/3, 2) + 1`.
pub fn dirac_m1(n: usize) -> Result<BigInt> {
    if !n.is_multiple_of(3) {
        return Err(Error::Divisibility { n, divisor: 3 });
    }
    if n < 3 {
        return Err(Error::InvalidParams(format!("n={n} too small")));
    }
    let n = n as i64;
    Ok(binom(n - 1, 2) - binom(2 * n / 3, 2) + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossoverSRow {
    pub s: usize,
    pub sigma_ell2: BigInt,
    pub sigma_ell3: BigInt,
    /// `σ₂′(ℓ=2) >= σ₂′(ℓ=3)`.
    pub ell2_ge_ell3: bool,
    /// `s <= (2n + 4)/9`, by exact cross-multiplication.
    pub below_threshold: bool,
}

impl CrossoverSRow {
    pub fn agrees(&self) -> bool {
        self.ell2_ge_ell3 == self.below_threshold
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossoverS {
    pub n: usize,
    pub threshold: BigRational,
    pub rows: Vec<CrossoverSRow>,
}

impl CrossoverS {
    pub fn exceptions(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| !r.agrees()).map(|r| r.s).collect()
    }
}

/// Compares the ℓ = 2 and ℓ = 3 cubic constructions for every `2 <= s <= n/3`.
pub fn crossover_s(n: usize) -> Result<CrossoverS> {
    if n < 6 {
        return Err(Error::InvalidParams(format!("crossover needs n >= 6, got {n}")));
    }
    let mut rows = Vec::new();
    for s in 2..=n / 3 {
        let two = sigma2_prime_closed(ClosedForm::EllTwoCubic, &ConstructionParams::new(n, 3, s, 2)?)?;
        let three = sigma2_prime_closed(ClosedForm::EllThreeCubic, &ConstructionParams::new(n, 3, s, 3)?)?;
        rows.push(CrossoverSRow {
            s,
            ell2_ge_ell3: two >= three,
            sigma_ell2: two,
            sigma_ell3: three,
            below_threshold: 9 * s <= 2 * n + 4,
        });
    }
    Ok(CrossoverS {
        n,
        threshold: BigRational::new(big(2 * n + 4), big(9)),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossoverK {
    pub k: usize,
    pub n: usize,
    pub sigma_ell1: BigInt,
    pub sigma_ell_k_minus_1: BigInt,
    #[serde(with = "ordering_name")]
    pub ordering: Ordering,
}

mod ordering_name {
    use std::cmp::Ordering;

    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(o: &Ordering, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match o {
            Ordering::Less => "less",
            Ordering::Equal => "equal",
            Ordering::Greater => "greater",
        })
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ordering, D::Error> {
        match String::deserialize(d)?.as_str() {
            "less" => Ok(Ordering::Less),
            "equal" => Ok(Ordering::Equal),
            "greater" => Ok(Ordering::Greater),
            other => Err(D::Error::custom(format!("unknown ordering {other:?}"))),
        }
    }
}

impl CrossoverK {
    /// Ordering expected for large `n`: ℓ = 1 below ℓ = k-1 when `k <= 6`,
    /// above it when `k >= 7`.
    pub fn expected(&self) -> Ordering {
        if self.k <= 6 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    pub fn matches_expected(&self) -> bool {
        self.ordering == self.expected()
    }
}

/// Compares ℓ = 1 with ℓ = k - 1 at `s = n/k`.
pub fn crossover_k(k: usize, n: usize) -> Result<CrossoverK> {
    if k < 3 {
        return Err(Error::InvalidParams(format!("crossover needs k >= 3, got {k}")));
    }
    if !n.is_multiple_of(k) {
        return Err(Error::Divisibility { n, divisor: k });
    }
    let s = n / k;
    let one = sigma2_prime_closed(ClosedForm::EllOne, &ConstructionParams::new(n, k, s, 1)?)?;
    let form = if k == 3 { ClosedForm::EllTwoCubic } else { ClosedForm::EllKMinusOne };
    let other = sigma2_prime_closed(form, &ConstructionParams::new(n, k, s, k - 1)?)?;
    Ok(CrossoverK {
        k,
        n,
        ordering: one.cmp(&other),
        sigma_ell1: one,
        sigma_ell_k_minus_1: other,
    })
}

/// Smallest multiple `n` of `k` (with `n >= 2k`) such that the expected
/// ordering holds for every multiple of `k` from `n` up to `n_max`.
pub fn crossover_k_onset(k: usize, n_max: usize) -> Result<Option<usize>> {
    let mut onset = None;
    let mut n = 2 * k;
    while n <= n_max {
        let row = crossover_k(k, n)?;
        if row.matches_expected() {
            onset.get_or_insert(n);
        } else {
            onset = None;
        }
        n += k;
    }
    Ok(onset)
}
