//! Signed permutations of coordinates and the symmetries of a finite window.

use std::collections::BTreeSet;

use crate::grid::Direction;

pub type Point = Vec<i64>;

/// `x -> (s_0 x_{p_0}, ..., s_{d-1} x_{p_{d-1}})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(d: usize) -> Self {
        SignedPermutation { perm: (0..d).collect(), signs: vec![1; d] }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn apply(&self, x: &[i64]) -> Point {
        self.perm.iter().zip(&self.signs).map(|(&p, &s)| s as i64 * x[p]).collect()
    }

    pub fn apply_direction(&self, v: &Direction) -> Direction {
        let c = v.components();
        let out = self.perm.iter().zip(&self.signs).map(|(&p, &s)| s * c[p]).collect();
        Direction::new(out).expect("signed permutations keep directions nonzero")
    }
}

/// All `2^d * d!` signed permutations.
pub fn signed_permutations(d: usize) -> Vec<SignedPermutation> {
    let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..d {
        perms = perms
            .into_iter()
            .flat_map(|p| {
                let free: Vec<usize> = (0..d).filter(|i| !p.contains(i)).collect();
                free.into_iter().map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    let mut out = Vec::with_capacity(perms.len() << d);
    for perm in perms {
        for mask in 0..1u32 << d {
            let signs = (0..d).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            out.push(SignedPermutation { perm: perm.clone(), signs });
        }
    }
    out
}

/// `x -> linear(x) + shift`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineSymmetry {
    pub linear: SignedPermutation,
    pub shift: Point,
}

impl AffineSymmetry {
    pub fn apply(&self, x: &[i64]) -> Point {
        self.linear.apply(x).into_iter().zip(&self.shift).map(|(a, b)| a + b).collect()
    }
}

/// Affine lattice symmetries mapping `window` onto itself.
pub fn window_stabilizer(window: &[Point]) -> Vec<AffineSymmetry> {
    let Some(first) = window.first() else {
        return Vec::new();
    };
    let d = first.len();
    let set: BTreeSet<Point> = window.iter().cloned().collect();
    let mins = |pts: &mut dyn Iterator<Item = &Point>| -> Point {
        let mut m = vec![i64::MAX; d];
        for p in pts {
            for (a, &b) in m.iter_mut().zip(p) {
                *a = (*a).min(b);
            }
        }
        m
    };
    let target = mins(&mut set.iter());
    signed_permutations(d)
        .into_iter()
        .filter_map(|linear| {
            let image: Vec<Point> = set.iter().map(|p| linear.apply(p)).collect();
            let low = mins(&mut image.iter());
            let shift: Point = target.iter().zip(&low).map(|(a, b)| a - b).collect();
            let sym = AffineSymmetry { linear, shift };
            let moved: BTreeSet<Point> = set.iter().map(|p| sym.apply(p)).collect();
            (moved == set).then_some(sym)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(lo: i64, hi: i64) -> Vec<Point> {
        let mut out = Vec::new();
        for x in lo..=hi {
            for y in lo..=hi {
                out.push(vec![x, y]);
            }
        }
        out
    }

    #[test]
    fn group_orders() {
        assert_eq!(signed_permutations(1).len(), 2);
        assert_eq!(signed_permutations(2).len(), 8);
        assert_eq!(signed_permutations(3).len(), 48);
        let set: BTreeSet<_> = signed_permutations(3).into_iter().collect();
        assert_eq!(set.len(), 48);
    }

    #[test]
    fn stabilizers() {
        assert_eq!(window_stabilizer(&square(-1, 1)).len(), 8);
        assert_eq!(window_stabilizer(&square(0, 1)).len(), 8);
        let rect = vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![1, 2]];
        assert_eq!(window_stabilizer(&rect).len(), 4);
        let corner = vec![vec![0, 0], vec![1, 0], vec![0, 1]];
        assert_eq!(window_stabilizer(&corner).len(), 2);
    }
}
