use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_integer::Integer;

use super::MAX_ORDER;
use crate::phase::cis_turns;
use crate::{Error, Result};

/// Element of a finite abelian group, stored as reduced coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<u64>);

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug)]
struct Inner {
    moduli: Vec<u64>,
    order: usize,
    /// `exponent / m_j`, so phases become integers mod `exponent`.
    weights: Vec<u64>,
    exponent: u64,
    roots: Vec<Complex64>,
    /// Row-major coordinates of every element, in index order.
    coords: Vec<u64>,
}

/// `Z_{m_1} x ... x Z_{m_d}`.
///
/// Elements are indexed in lexicographic order of their coordinates (mixed
/// radix with the first coordinate most significant). Cloning is cheap.
#[derive(Clone, Debug)]
pub struct FiniteAbelianGroup(Arc<Inner>);

impl PartialEq for FiniteAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.0.moduli == other.0.moduli
    }
}

impl Eq for FiniteAbelianGroup {}

impl FiniteAbelianGroup {
    pub fn new(moduli: &[u64]) -> Result<Self> {
        if moduli.is_empty() || moduli.contains(&0) {
            return Err(Error::InvalidArgument(
                "group needs at least one positive modulus".into(),
            ));
        }
        let mut order: usize = 1;
        for &m in moduli {
            order = usize::try_from(m)
                .ok()
                .and_then(|m| order.checked_mul(m))
                .filter(|&o| o <= MAX_ORDER)
                .ok_or(Error::GroupTooLarge(usize::MAX))?;
        }
        let exponent = moduli.iter().fold(1u64, |a, &m| a.lcm(&m));
        let weights = moduli.iter().map(|&m| exponent / m).collect();
        let roots = (0..exponent)
            .map(|k| cis_turns(k as f64 / exponent as f64))
            .collect();
        let d = moduli.len();
        let mut coords = vec![0u64; order * d];
        for idx in 0..order {
            let mut rest = idx as u64;
            for j in (0..d).rev() {
                coords[idx * d + j] = rest % moduli[j];
                rest /= moduli[j];
            }
        }
        Ok(Self(Arc::new(Inner {
            moduli: moduli.to_vec(),
            order,
            weights,
            exponent,
            roots,
            coords,
        })))
    }

    /// Parses `"m1xm2x..."`, e.g. `"2x4"` or `"12"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let moduli = spec
            .split(['x', 'X', '×'])
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad group spec {spec:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        match Self::new(&moduli) {
            Err(Error::GroupTooLarge(_)) => Err(Error::GroupTooLarge(
                moduli
                    .iter()
                    .fold(1usize, |a, &m| a.saturating_mul(m as usize)),
            )),
            other => other,
        }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.0.moduli
    }

    pub fn rank(&self) -> usize {
        self.0.moduli.len()
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    /// Least common multiple of the moduli.
    pub fn exponent(&self) -> u64 {
        self.0.exponent
    }

    pub fn coords_of(&self, idx: usize) -> &[u64] {
        let d = self.rank();
        &self.0.coords[idx * d..(idx + 1) * d]
    }

    pub fn element(&self, idx: usize) -> GroupElement {
        GroupElement(self.coords_of(idx).to_vec())
    }

    /// Reduces arbitrary integer coordinates and returns the element.
    pub fn element_from(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        Ok(GroupElement(
            coords
                .iter()
                .zip(self.moduli())
                .map(|(&c, &m)| c.rem_euclid(m as i64) as u64)
                .collect(),
        ))
    }

    /// Parses `"(1,2)"`; a bare integer is accepted for rank-one groups.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        let coords = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad group element {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.element_from(&coords)
            .map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn index(&self, x: &GroupElement) -> usize {
        debug_assert_eq!(x.0.len(), self.rank());
        x.0.iter()
            .zip(self.moduli())
            .fold(0usize, |acc, (&c, &m)| acc * m as usize + (c % m) as usize)
    }

    fn index_of_coords(&self, f: impl Fn(usize, u64) -> u64) -> usize {
        self.moduli()
            .iter()
            .enumerate()
            .fold(0usize, |acc, (j, &m)| {
                acc * m as usize + (f(j, m) % m) as usize
            })
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coords_of(a), self.coords_of(b));
        self.index_of_coords(|j, _| ca[j] + cb[j])
    }

    pub fn neg(&self, a: usize) -> usize {
        let ca = self.coords_of(a);
        self.index_of_coords(|j, m| m - ca[j])
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coords_of(a), self.coords_of(b));
        self.index_of_coords(|j, m| ca[j] + m - cb[j])
    }

    /// `(x, alpha)` as an integer phase modulo [`Self::exponent`].
    pub fn pairing_phase(&self, x: usize, alpha: usize) -> u64 {
        let (cx, ca) = (self.coords_of(x), self.coords_of(alpha));
        let e = self.exponent();
        cx.iter()
            .zip(ca)
            .zip(&self.0.weights)
            .fold(0u64, |acc, ((&a, &b), &w)| (acc + a * b % e * w) % e)
    }

    /// `(x, alpha) = exp(2 pi i sum_j x_j alpha_j / m_j)`.
    pub fn pairing(&self, x: usize, alpha: usize) -> Complex64 {
        self.0.roots[self.pairing_phase(x, alpha) as usize]
    }

    /// `exp(2 pi i k / exponent)`.
    pub fn root(&self, k: u64) -> Complex64 {
        self.0.roots[(k % self.exponent()) as usize]
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli().iter().map(u64::to_string).collect();
        f.write_str(&parts.join("x"))
    }
}
