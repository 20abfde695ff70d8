use std::fmt;

use crate::error::{Error, Result};

/// A bijection on the points `{1..n}`, stored in one-line form.
///
/// Products follow the right-action convention: `pi.then(sigma)` (equivalently
/// [`compose`]`(pi, sigma)`) applies `pi` first and then `sigma`, so the image
/// of a point `i` is `sigma(pi(i))`.
///
/// Points are 1-based at every public boundary. The image array is kept
/// 0-based internally, which leaves the derived lexicographic ordering
/// identical to the ordering of the 1-based one-line forms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Box<[u8]>,
}

pub const MAX_DEGREE: usize = u8::MAX as usize;

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(
            (1..=MAX_DEGREE).contains(&degree),
            "degree {degree} out of range"
        );
        Self {
            image: (0..degree as u8).collect(),
        }
    }

    /// Builds a permutation from its 1-based one-line form `π_1 π_2 … π_n`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!(
                "degree {n} out of range 1..={MAX_DEGREE}"
            )));
        }
        let mut seen = vec![false; n];
        let mut image = Vec::with_capacity(n);
        for &p in images {
            if p == 0 || p > n {
                return Err(Error::InvalidPermutation(format!(
                    "image {p} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::InvalidPermutation(format!(
                    "image {p} appears twice"
                )));
            }
            image.push((p - 1) as u8);
        }
        Ok(Self {
            image: image.into_boxed_slice(),
        })
    }

    pub(crate) fn from_zero_based(image: Vec<u8>) -> Self {
        debug_assert!({
            let mut sorted = image.clone();
            sorted.sort_unstable();
            sorted.iter().enumerate().all(|(i, &p)| i == p as usize)
        });
        Self {
            image: image.into_boxed_slice(),
        }
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// Image of the 1-based `point`.
    pub fn apply(&self, point: usize) -> usize {
        self.image[point - 1] as usize + 1
    }

    /// The 1-based one-line form.
    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|&p| p as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// Apply `self`, then `other`. Panics on a degree mismatch; use
    /// [`compose`] at untrusted boundaries.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Self {
            image: self
                .image
                .iter()
                .map(|&p| other.image[p as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &p) in self.image.iter().enumerate() {
            inv[p as usize] = i as u8;
        }
        Self {
            image: inv.into_boxed_slice(),
        }
    }

    /// `self^{-1} · other` in the right-action convention.
    pub fn left_quotient(&self, other: &Permutation) -> Permutation {
        self.inverse().then(other)
    }

    /// Conjugate `g · self · g^{-1}`.
    pub fn conjugated_by(&self, g: &Permutation) -> Permutation {
        g.then(self).then(&g.inverse())
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().map(Vec::len).fold(1, lcm)
    }

    /// Disjoint cycles of length ≥ 2 in canonical form: each starts at its
    /// minimum point and cycles are sorted by that minimum. Points are 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.image[p] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Parses disjoint-cycle notation such as `"(1 2)(3 4)"` at the given
    /// degree. `"()"` is the identity; commas are accepted as separators.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let err = |reason: String| Error::Parse {
            text: text.to_string(),
            reason,
        };
        if degree == 0 || degree > MAX_DEGREE {
            return Err(err(format!("degree {degree} out of range")));
        }
        let mut image: Vec<u8> = (0..degree as u8).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(err("empty text; write () for the identity".into()));
        }
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(err(format!("expected '(' at {rest:?}")));
            };
            let Some(close) = body.find(')') else {
                return Err(err("unclosed '('".into()));
            };
            let inner = &body[..close];
            if inner.contains('(') {
                return Err(err("nested '('".into()));
            }
            let mut points = Vec::new();
            for tok in inner
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
            {
                let p: usize = tok.parse().map_err(|_| err(format!("bad point {tok:?}")))?;
                if p == 0 || p > degree {
                    return Err(err(format!("point {p} out of range 1..={degree}")));
                }
                if std::mem::replace(&mut used[p - 1], true) {
                    return Err(err(format!("repeated point {p}")));
                }
                points.push(p - 1);
            }
            for (i, &p) in points.iter().enumerate() {
                image[p] = points[(i + 1) % points.len()] as u8;
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Self::from_zero_based(image))
    }

    /// Canonical cycle notation; the identity prints as `"()"`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let pts: Vec<String> = c.iter().map(usize::to_string).collect();
            s.push_str(&pts.join(" "));
            s.push(')');
        }
        s
    }
}

/// `pi · sigma`: apply `pi`, then `sigma`.
pub fn compose(pi: &Permutation, sigma: &Permutation) -> Result<Permutation> {
    if pi.degree() != sigma.degree() {
        return Err(Error::DegreeMismatch {
            left: pi.degree(),
            right: sigma.degree(),
        });
    }
    Ok(pi.then(sigma))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[n={}]", self.to_cycle_string(), self.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    /// Index-wise application, independent of `then`.
    fn apply_both(pi: &Permutation, sigma: &Permutation) -> Vec<usize> {
        (1..=pi.degree())
            .map(|i| sigma.apply(pi.apply(i)))
            .collect()
    }

    #[test]
    fn compose_identity_left() {
        let pi = p("(1 3 2)(4 5)", 5);
        assert_eq!(compose(&Permutation::identity(5), &pi).unwrap(), pi);
    }

    #[test]
    fn compose_b_then_a_is_an_n_minus_1_cycle() {
        let b = p("(1 2 3 4)", 4);
        let a = p("(1 2)", 4);
        let ba = compose(&b, &a).unwrap();
        assert_eq!(ba.images(), apply_both(&b, &a));
        assert_eq!(ba, p("(2 3 4)", 4));
        assert_eq!(ba.cycles().len(), 1);
        assert_eq!(ba.cycles()[0].len(), 3);
    }

    #[test]
    fn compose_a_then_b() {
        let a = p("(1 2)", 4);
        let b = p("(1 2 3 4)", 4);
        let ab = compose(&a, &b).unwrap();
        assert_eq!(ab.images(), apply_both(&a, &b));
        assert_eq!(ab, p("(1 3 4)", 4));
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = compose(&Permutation::identity(3), &Permutation::identity(4)).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 3, right: 4 });
    }

    #[test]
    fn inverses() {
        assert!(Permutation::identity(3).inverse().is_identity());
        assert_eq!(p("(1 2)", 3).inverse(), p("(1 2)", 3));
        assert_eq!(p("(1 2 3)", 3).inverse(), p("(1 3 2)", 3));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("(1 2)(3 4)", 4).images(), vec![2, 1, 4, 3]);
        assert!(p("()", 5).is_identity());
        assert!(p(" ( 1, 2 ) ( 3 ) ", 4) == p("(1 2)", 4));
    }

    #[test]
    fn parse_errors() {
        let bad = |t: &str, n: usize| Permutation::parse_cycles(t, n).unwrap_err();
        assert!(
            matches!(bad("(1 2)(2 3)", 3), Error::Parse { reason, .. } if reason.contains("repeated"))
        );
        assert!(
            matches!(bad("(1 5)", 4), Error::Parse { reason, .. } if reason.contains("out of range"))
        );
        assert!(matches!(bad("(1 2", 4), Error::Parse { .. }));
        assert!(matches!(bad("1 2)", 4), Error::Parse { .. }));
        assert!(matches!(bad("((1 2))", 4), Error::Parse { .. }));
        assert!(matches!(bad("(1 x)", 4), Error::Parse { .. }));
        assert!(matches!(bad("", 4), Error::Parse { .. }));
    }

    #[test]
    fn print_is_canonical() {
        assert_eq!(p("(4 3)(2 5 1)", 5).to_cycle_string(), "(1 2 5)(3 4)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn from_images_validates() {
        assert!(Permutation::from_images(&[1, 1]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(Permutation::from_images(&[]).is_err());
        assert_eq!(
            Permutation::from_images(&[3, 1, 2, 4]).unwrap(),
            p("(1 3 2)", 4)
        );
    }

    #[test]
    fn orders() {
        assert_eq!(p("(1 2)(3 4 5)", 5).order(), 6);
        assert_eq!(Permutation::identity(2).order(), 1);
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((1..=n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(&v).unwrap())
    }

    proptest! {
        #[test]
        fn associative(a in perm_strategy(6), b in perm_strategy(6), c in perm_strategy(6)) {
            prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        }

        #[test]
        fn inverse_cancels(a in perm_strategy(7)) {
            prop_assert!(a.then(&a.inverse()).is_identity());
            prop_assert!(a.inverse().then(&a).is_identity());
        }

        #[test]
        fn then_matches_pointwise(a in perm_strategy(6), b in perm_strategy(6)) {
            prop_assert_eq!(a.then(&b).images(), apply_both(&a, &b));
        }

        #[test]
        fn cycle_notation_round_trips(a in perm_strategy(8)) {
            let text = a.to_cycle_string();
            let back = Permutation::parse_cycles(&text, 8).unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_cycle_string(), text);
        }
    }
}
