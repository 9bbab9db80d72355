//! Permutations stored as image sequences, with cycle-notation parsing and
//! printing.
//!
//! Points are 1-based in cycle notation and 0-based internally. Products act
//! on the right: `a * b` applies `a` first, then `b`, so conjugation
//! `x^g = g⁻¹ x g` matches the usual exponent notation.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported degree. Coset actions of quotients can reach index
/// 1000, so images are stored as `u16`.
pub const MAX_DEGREE: usize = 1024;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        assert!((1..=MAX_DEGREE).contains(&degree), "degree {degree} out of range");
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from 0-based images. Fails unless `images` is a
    /// bijection on `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        let degree = images.len();
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::DegreeCapExceeded {
                degree,
                cap: MAX_DEGREE,
            });
        }
        let mut seen = vec![false; degree];
        for &i in &images {
            if i >= degree || seen[i] {
                return Err(Error::NotBijection);
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    /// Builds a permutation of the given degree from 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Permutation> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (pos, &point) in cycle.iter().enumerate() {
                if point == 0 || point > degree {
                    return Err(Error::PointOutOfRange { point, degree });
                }
                if touched[point - 1] {
                    return Err(Error::NotBijection);
                }
                touched[point - 1] = true;
                let next = cycle[(pos + 1) % cycle.len()];
                if next == 0 || next > degree {
                    return Err(Error::PointOutOfRange { point: next, degree });
                }
                images[point - 1] = next - 1;
            }
        }
        Permutation::from_images(images)
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)` or `()` at a fixed
    /// degree. Points may also be separated by commas.
    pub fn parse(text: &str, degree: usize) -> Result<Permutation> {
        let cycles = parse_cycles(text)?;
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Permutation::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u16;
        }
        Permutation {
            images: images.into(),
        }
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in product");
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    /// The permutation on `degree` points that acts as `self` on the points
    /// starting at `offset` and fixes everything else.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[offset + i] = offset as u16 + j;
        }
        Permutation {
            images: images.into(),
        }
    }

    /// Nontrivial cycles in canonical form: each starts at its smallest point,
    /// cycles ordered by that point. Points are 0-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.apply(start);
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.apply(next);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .fold(1, |acc, c| lcm(acc, c.len()))
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}; {}]", self.degree(), self)
    }
}

/// Parses a cycle word into 1-based cycles without fixing a degree.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let err = |reason: &str| Error::CycleSyntax {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(err("empty permutation; write () for the identity"));
    }
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| err("expected '('"))?;
        let close = body.find(')').ok_or_else(|| err("unclosed cycle"))?;
        let inner = &body[..close];
        if inner.contains('(') {
            return Err(err("nested '('"));
        }
        let points = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .ok()
                    .filter(|&p| p >= 1)
                    .ok_or_else(|| err(&format!("bad point {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Splits a generator list such as `(1 2)(3 4),(1 3)(2 4)` at the commas
/// that sit outside parentheses.
pub fn split_generator_list(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' | ';' if depth == 0 => {
                out.push(std::mem::take(&mut current));
                continue;
            }
            _ => {}
        }
        current.push(c);
    }
    out.push(current);
    out.into_iter()
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

/// Largest point mentioned in a cycle word, i.e. the smallest degree it fits.
pub fn min_degree(text: &str) -> Result<usize> {
    Ok(parse_cycles(text)?
        .iter()
        .flatten()
        .copied()
        .max()
        .unwrap_or(1))
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses at the smallest degree covering every mentioned point.
    fn from_str(s: &str) -> Result<Permutation> {
        Permutation::parse(s, min_degree(s)?)
    }
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
