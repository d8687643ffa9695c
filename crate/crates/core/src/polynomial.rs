//! Exact sparse multivariate polynomials over the integers, and the
//! Grothendieck and Schubert polynomials built from them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::moves::{enumerate_pipes, marked_bpds};
use crate::permutation::Permutation;

/// Exponent vector of a monomial x_1^{e_1} ⋯ x_n^{e_n}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Componentwise `self <= other`, i.e. x^self divides x^other.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn shifted(&self, var: usize, delta: i64) -> Exponent {
        let mut e = self.0.clone();
        e[var] = (e[var] as i64 + delta) as u32;
        Exponent(e)
    }
}

impl From<Vec<u32>> for Exponent {
    fn from(v: Vec<u32>) -> Self {
        Exponent(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

/// One term of the JSON polynomial form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    #[serde(with = "coeff_json")]
    pub coeff: BigInt,
    pub exp: Vec<u32>,
}

/// Coefficients are JSON integers; anything beyond i64 falls back to a
/// decimal string.
mod coeff_json {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(c: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match c.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.collect_str(c),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(i64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Int(v) => Ok(BigInt::from(v)),
            Repr::Text(t) => t.parse().map_err(de::Error::custom),
        }
    }
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(Exponent::zero(nvars), BigInt::one())
    }

    pub fn monomial(exp: Exponent, coeff: BigInt) -> Self {
        let mut p = Self::zero(exp.0.len());
        p.add_term(exp, coeff);
        p
    }

    /// x_i, 1-indexed.
    pub fn variable(nvars: usize, i: usize) -> Self {
        Self::monomial(Exponent::zero(nvars).shifted(i - 1, 1), BigInt::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &Exponent) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exp: Exponent, coeff: BigInt) {
        assert_eq!(exp.0.len(), self.nvars, "exponent length mismatch");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = SparsePoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.0.iter().zip(&eb.0).map(|(a, b)| a + b).collect();
                out.add_term(Exponent(e), ca * cb);
            }
        }
        out
    }

    /// s_i f: exchanges x_i and x_{i+1}.
    pub fn swap_vars(&self, i: usize) -> SparsePoly {
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.0.swap(i - 1, i);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Exact division by x_i − x_{i+1}. Returns `None` if the remainder is
    /// nonzero.
    pub fn div_by_difference(&self, i: usize) -> Option<SparsePoly> {
        let (a, b) = (i - 1, i);
        let mut quotient = SparsePoly::zero(self.nvars);
        let mut work = self.clone();
        // each step lowers the x_i exponent of the carried term by one
        while let Some(exp) = work.terms.keys().rev().find(|e| e.0[a] > 0).cloned() {
            let c = work.terms.remove(&exp).unwrap();
            let q = exp.shifted(a, -1);
            work.add_term(q.shifted(b, 1), c.clone());
            quotient.add_term(q, c);
        }
        work.is_zero().then_some(quotient)
    }

    /// ∂_i f = (f − s_i f) / (x_i − x_{i+1}).
    pub fn divided_difference(&self, i: usize) -> SparsePoly {
        assert!(i >= 1 && i < self.nvars, "index {i} out of range");
        self.sub(&self.swap_vars(i))
            .div_by_difference(i)
            .expect("f - s_i f is always divisible by x_i - x_{i+1}")
    }

    /// π_i f = ∂_i((1 − x_{i+1}) f).
    pub fn pi_op(&self, i: usize) -> SparsePoly {
        assert!(i >= 1 && i < self.nvars, "index {i} out of range");
        let factor = SparsePoly::one(self.nvars).sub(&SparsePoly::variable(self.nvars, i + 1));
        factor.mul(self).divided_difference(i)
    }

    /// Total degree; −1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|e| e.total() as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Lowest total degree; `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Exponent::total).min()
    }

    pub fn homogeneous_component(&self, k: usize) -> SparsePoly {
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.total() == k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn support(&self) -> BTreeSet<Exponent> {
        self.terms.keys().cloned().collect()
    }

    /// Terms by total degree ascending, lex descending on (x_1, …, x_n)
    /// within a degree. This is the printing order.
    pub fn display_terms(&self) -> Vec<(&Exponent, &BigInt)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|(a, _), (b, _)| a.total().cmp(&b.total()).then_with(|| b.cmp(a)));
        t
    }

    /// Terms in graded-lex descending order on (x_1, …, x_n).
    pub fn graded_lex_terms(&self) -> Vec<(&Exponent, &BigInt)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|(a, _), (b, _)| b.total().cmp(&a.total()).then_with(|| b.cmp(a)));
        t
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.graded_lex_terms()
            .into_iter()
            .map(|(e, c)| TermJson {
                coeff: c.clone(),
                exp: e.0.clone(),
            })
            .collect()
    }

    pub fn from_json(nvars: usize, terms: &[TermJson]) -> SparsePoly {
        let mut p = SparsePoly::zero(nvars);
        for t in terms {
            p.add_term(Exponent(t.exp.clone()), t.coeff.clone());
        }
        p
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.display_terms().into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (k, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let mag = c.abs();
            let vars: Vec<String> =
                e.0.iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0)
                    .map(|(i, &p)| {
                        if p == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{p}", i + 1)
                        }
                    })
                    .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// The Grothendieck polynomial as the signed sum over marked pipe dreams:
/// each (P, S) contributes (−1)^{|D(P)|+|S|−ℓ(ω)} ∏ x_row over the blank
/// cells of P and the cells of S.
pub fn groth_bpd(p: &Permutation) -> SparsePoly {
    let n = p.n();
    let len = p.length();
    let mut out = SparsePoly::zero(n);
    for m in marked_bpds(p) {
        let size = m.bpd().blanks().len() + m.marks().len();
        let sign = if (size + len).is_multiple_of(2) {
            1
        } else {
            -1
        };
        out.add_term(Exponent(m.weight()), BigInt::from(sign));
    }
    out
}

/// The Schubert polynomial: one monomial per reduced pipe dream, one x_row
/// per blank cell.
pub fn schubert_bpd(p: &Permutation) -> SparsePoly {
    let n = p.n();
    let mut out = SparsePoly::zero(n);
    for b in enumerate_pipes(p).into_iter().filter(|b| b.is_reduced()) {
        let mut exp = vec![0u32; n];
        for (r, _) in b.blanks() {
            exp[r - 1] += 1;
        }
        out.add_term(Exponent(exp), BigInt::one());
    }
    out
}

/// Which ascent the recursion descends through.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AscentPolicy {
    Smallest,
    Largest,
}

fn staircase(n: usize) -> SparsePoly {
    let exp = (0..n).map(|i| (n - 1 - i) as u32).collect();
    SparsePoly::monomial(Exponent(exp), BigInt::one())
}

#[derive(Clone, Copy)]
enum Operator {
    Pi,
    Partial,
}

fn recurse(
    p: &Permutation,
    op: Operator,
    policy: AscentPolicy,
    memo: &mut HashMap<Permutation, SparsePoly>,
) -> SparsePoly {
    if let Some(f) = memo.get(p) {
        return f.clone();
    }
    let ascent = match policy {
        AscentPolicy::Smallest => p.ascents().next(),
        AscentPolicy::Largest => p.ascents().last(),
    };
    let f = match ascent {
        None => staircase(p.n()),
        Some(i) => {
            let up = recurse(&p.swap_positions(i), op, policy, memo);
            match op {
                Operator::Pi => up.pi_op(i),
                Operator::Partial => up.divided_difference(i),
            }
        }
    };
    memo.insert(p.clone(), f.clone());
    f
}

/// 𝔊_ω by the isobaric divided-difference recursion from ω₀.
pub fn groth_oracle(p: &Permutation) -> SparsePoly {
    groth_oracle_with(p, AscentPolicy::Smallest)
}

pub fn groth_oracle_with(p: &Permutation, policy: AscentPolicy) -> SparsePoly {
    recurse(p, Operator::Pi, policy, &mut HashMap::new())
}

/// 𝔖_ω by the divided-difference recursion from ω₀.
pub fn schubert_oracle(p: &Permutation) -> SparsePoly {
    schubert_oracle_with(p, AscentPolicy::Smallest)
}

pub fn schubert_oracle_with(p: &Permutation, policy: AscentPolicy) -> SparsePoly {
    recurse(p, Operator::Partial, policy, &mut HashMap::new())
}
