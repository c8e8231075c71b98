use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a monomial, ordered graded-lexicographically.
///
/// The total degree is cached and compared first; ties are broken
/// lexicographically with `x1` as the most significant variable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial { degree: 0, exps: vec![0; arity] }
    }

    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { degree, exps }
    }

    pub fn var(arity: usize, index: usize, power: u32) -> Self {
        let mut exps = vec![0; arity];
        exps[index] = power;
        Monomial { degree: power, exps }
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, index: usize) -> u32 {
        self.exps.get(index).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub(crate) fn padded(&self, arity: usize) -> Monomial {
        if self.exps.len() >= arity {
            return self.clone();
        }
        let mut exps = self.exps.clone();
        exps.resize(arity, 0);
        Monomial { degree: self.degree, exps }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        let exps = (0..n).map(|i| self.exp(i) + other.exp(i)).collect();
        Monomial { degree: self.degree + other.degree, exps }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.degree > self.degree {
            return None;
        }
        let n = self.exps.len().max(other.exps.len());
        let mut exps = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b) = (self.exp(i), other.exp(i));
            if b > a {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { degree: self.degree - other.degree, exps })
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        Monomial::new((0..n).map(|i| self.exp(i).min(other.exp(i))).collect())
    }

    /// Removes the exponent of `index`, returning it with the reduced monomial.
    pub(crate) fn split_var(&self, index: usize) -> (u32, Monomial) {
        let e = self.exp(index);
        let mut exps = self.exps.clone();
        if index < exps.len() {
            exps[index] = 0;
        }
        (e, Monomial { degree: self.degree - e, exps })
    }

    pub(crate) fn with_var(&self, index: usize, power: u32) -> Monomial {
        let mut exps = self.exps.clone();
        if exps.len() <= index {
            exps.resize(index + 1, 0);
        }
        let old = exps[index];
        exps[index] = power;
        Monomial { degree: self.degree - old + power, exps }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let n = self.exps.len().max(other.exps.len());
            for i in 0..n {
                match self.exp(i).cmp(&other.exp(i)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}
