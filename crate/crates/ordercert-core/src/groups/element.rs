use super::laurent::LaurentPoly;
use super::{Group, GroupError, GroupKind};

/// Kind-specific normal form of a group element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Payload {
    /// Reduced word over signed letters; letter `i + 1` is generator `i`,
    /// negative letters are inverses.
    Word(Vec<i32>),
    /// Exponent vector; one residue entry for cyclic groups.
    Vector(Vec<i64>),
    /// `a^m b^n` in the Klein bottle group.
    Klein { a: i64, b: i64 },
    /// `x^p y^q z^r` in Mal'cev coordinates.
    Heisenberg { x: i64, y: i64, z: i64 },
    /// Pair (polynomial, z-exponent).
    Laurent { poly: LaurentPoly, z: i64 },
    /// Componentwise payloads of a direct product.
    Tuple(Vec<Payload>),
}

/// A group element in canonical normal form. Ordering is the lexicographic
/// order on normal forms, which makes enumeration deterministic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    group: Group,
    payload: Payload,
}

impl Element {
    pub fn identity(group: Group) -> Element {
        let payload = identity_payload(&group);
        Element { group, payload }
    }

    pub(super) fn generator_unchecked(group: Group, index: usize) -> Element {
        let payload = generator_payload(&group, index);
        Element { group, payload }
    }

    /// Wrap a payload, normalizing residues. The payload shape must match
    /// the group kind.
    pub fn from_payload(group: Group, payload: Payload) -> Result<Element, GroupError> {
        if !payload_matches(&group, &payload) {
            return Err(GroupError::OwnerMismatch {
                expected: group.to_string(),
                found: "payload of mismatched shape".to_owned(),
            });
        }
        let payload = normalize_payload(&group, payload);
        Ok(Element { group, payload })
    }

    /// Evaluate a word in generator indices with exponents.
    pub fn from_generator_word(group: &Group, word: &[(usize, i64)]) -> Element {
        let mut acc = group.identity();
        for &(index, exp) in word {
            acc = acc
                .multiply(&group.generator(index).pow(exp))
                .expect("same owner");
        }
        acc
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn is_identity(&self) -> bool {
        self.payload == identity_payload(&self.group)
    }

    pub fn multiply(&self, other: &Element) -> Result<Element, GroupError> {
        if self.group != other.group {
            return Err(GroupError::OwnerMismatch {
                expected: self.group.to_string(),
                found: other.group.to_string(),
            });
        }
        let payload = mul_payload(&self.group, &self.payload, &other.payload);
        Ok(Element {
            group: self.group.clone(),
            payload,
        })
    }

    pub fn inverse(&self) -> Element {
        Element {
            group: self.group.clone(),
            payload: inv_payload(&self.group, &self.payload),
        }
    }

    pub fn pow(&self, exp: i64) -> Element {
        if exp < 0 {
            return self.inverse().pow(-exp);
        }
        let mut acc = self.group.identity();
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&base).expect("same owner");
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base).expect("same owner");
            }
        }
        acc
    }

    /// Conjugate `self` by `g`, producing `g * self * g^-1`.
    pub fn conjugate_by(&self, g: &Element) -> Result<Element, GroupError> {
        g.multiply(self)?.multiply(&g.inverse())
    }

    /// Decompose the normal form into a word over generator indices with
    /// exponents; evaluating the word reproduces the element.
    pub fn generator_word(&self) -> Vec<(usize, i64)> {
        generator_word_of(&self.group, &self.payload)
    }
}

fn payload_matches(group: &Group, payload: &Payload) -> bool {
    match (group.kind(), payload) {
        (GroupKind::Free(_), Payload::Word(_)) => true,
        (GroupKind::FreeAbelian(n), Payload::Vector(v)) => v.len() == *n as usize,
        (GroupKind::FiniteCyclic(_), Payload::Vector(v)) => v.len() == 1,
        (GroupKind::KleinBottle, Payload::Klein { .. }) => true,
        (GroupKind::Heisenberg, Payload::Heisenberg { .. }) => true,
        (GroupKind::LaurentSemidirect, Payload::Laurent { .. }) => true,
        (GroupKind::DirectProduct(factors), Payload::Tuple(parts)) => {
            factors.len() == parts.len()
                && factors
                    .iter()
                    .zip(parts.iter())
                    .all(|(f, p)| payload_matches(f, p))
        }
        _ => false,
    }
}

fn normalize_payload(group: &Group, payload: Payload) -> Payload {
    match (group.kind(), payload) {
        (GroupKind::Free(_), Payload::Word(w)) => Payload::Word(reduce_word(w)),
        (GroupKind::FiniteCyclic(n), Payload::Vector(v)) => {
            Payload::Vector(vec![v[0].rem_euclid(*n as i64)])
        }
        (GroupKind::DirectProduct(factors), Payload::Tuple(parts)) => Payload::Tuple(
            factors
                .iter()
                .zip(parts)
                .map(|(f, p)| normalize_payload(f, p))
                .collect(),
        ),
        (_, p) => p,
    }
}

fn identity_payload(group: &Group) -> Payload {
    match group.kind() {
        GroupKind::Free(_) => Payload::Word(Vec::new()),
        GroupKind::FreeAbelian(n) => Payload::Vector(vec![0; *n as usize]),
        GroupKind::FiniteCyclic(_) => Payload::Vector(vec![0]),
        GroupKind::KleinBottle => Payload::Klein { a: 0, b: 0 },
        GroupKind::Heisenberg => Payload::Heisenberg { x: 0, y: 0, z: 0 },
        GroupKind::LaurentSemidirect => Payload::Laurent {
            poly: LaurentPoly::zero(),
            z: 0,
        },
        GroupKind::DirectProduct(factors) => {
            Payload::Tuple(factors.iter().map(identity_payload).collect())
        }
    }
}

fn generator_payload(group: &Group, index: usize) -> Payload {
    match group.kind() {
        GroupKind::Free(_) => Payload::Word(vec![index as i32 + 1]),
        GroupKind::FreeAbelian(n) => {
            let mut v = vec![0; *n as usize];
            v[index] = 1;
            Payload::Vector(v)
        }
        GroupKind::FiniteCyclic(n) => Payload::Vector(vec![1i64.rem_euclid(*n as i64)]),
        GroupKind::KleinBottle => match index {
            0 => Payload::Klein { a: 1, b: 0 },
            _ => Payload::Klein { a: 0, b: 1 },
        },
        GroupKind::Heisenberg => match index {
            0 => Payload::Heisenberg { x: 1, y: 0, z: 0 },
            1 => Payload::Heisenberg { x: 0, y: 1, z: 0 },
            _ => Payload::Heisenberg { x: 0, y: 0, z: 1 },
        },
        GroupKind::LaurentSemidirect => match index {
            0 => Payload::Laurent {
                poly: LaurentPoly::constant(1),
                z: 0,
            },
            _ => Payload::Laurent {
                poly: LaurentPoly::zero(),
                z: 1,
            },
        },
        GroupKind::DirectProduct(factors) => {
            let mut parts: Vec<Payload> = factors.iter().map(identity_payload).collect();
            let mut remaining = index;
            for (i, factor) in factors.iter().enumerate() {
                let count = factor.generator_count();
                if remaining < count {
                    parts[i] = generator_payload(factor, remaining);
                    break;
                }
                remaining -= count;
            }
            Payload::Tuple(parts)
        }
    }
}

fn reduce_word(word: Vec<i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(word.len());
    for letter in word {
        if letter == 0 {
            continue;
        }
        if out.last().is_some_and(|&top| top == -letter) {
            out.pop();
        } else {
            out.push(letter);
        }
    }
    out
}

fn mul_payload(group: &Group, a: &Payload, b: &Payload) -> Payload {
    match (group.kind(), a, b) {
        (GroupKind::Free(_), Payload::Word(u), Payload::Word(v)) => {
            let mut w = u.clone();
            w.extend_from_slice(v);
            Payload::Word(reduce_word(w))
        }
        (GroupKind::FreeAbelian(_), Payload::Vector(u), Payload::Vector(v)) => {
            Payload::Vector(u.iter().zip(v.iter()).map(|(x, y)| x + y).collect())
        }
        (GroupKind::FiniteCyclic(n), Payload::Vector(u), Payload::Vector(v)) => {
            Payload::Vector(vec![(u[0] + v[0]).rem_euclid(*n as i64)])
        }
        // (a^m b^n)(a^p b^q) = a^(m + (-1)^n p) b^(n + q) via b a = a^-1 b.
        (GroupKind::KleinBottle, Payload::Klein { a: m, b: n }, Payload::Klein { a: p, b: q }) => {
            let twisted = if n.rem_euclid(2) == 0 { *p } else { -p };
            Payload::Klein {
                a: m + twisted,
                b: n + q,
            }
        }
        // Collecting x^p y^q z^r x^p' y^q' z^r' costs one z^(-p' q) commutator
        // correction; z is central.
        (
            GroupKind::Heisenberg,
            Payload::Heisenberg { x: p, y: q, z: r },
            Payload::Heisenberg {
                x: p2,
                y: q2,
                z: r2,
            },
        ) => Payload::Heisenberg {
            x: p + p2,
            y: q + q2,
            z: r + r2 - p2 * q,
        },
        // (p, z^a)(q, z^b) = (p + t^a q, z^(a + b)).
        (
            GroupKind::LaurentSemidirect,
            Payload::Laurent { poly: p, z: za },
            Payload::Laurent { poly: q, z: zb },
        ) => Payload::Laurent {
            poly: p.add(&q.shift(*za)),
            z: za + zb,
        },
        (GroupKind::DirectProduct(factors), Payload::Tuple(u), Payload::Tuple(v)) => Payload::Tuple(
            factors
                .iter()
                .zip(u.iter().zip(v.iter()))
                .map(|(f, (x, y))| mul_payload(f, x, y))
                .collect(),
        ),
        _ => unreachable!("payload shape checked at construction"),
    }
}

fn inv_payload(group: &Group, p: &Payload) -> Payload {
    match (group.kind(), p) {
        (GroupKind::Free(_), Payload::Word(w)) => {
            Payload::Word(w.iter().rev().map(|l| -l).collect())
        }
        (GroupKind::FreeAbelian(_), Payload::Vector(v)) => {
            Payload::Vector(v.iter().map(|x| -x).collect())
        }
        (GroupKind::FiniteCyclic(n), Payload::Vector(v)) => {
            Payload::Vector(vec![(-v[0]).rem_euclid(*n as i64)])
        }
        (GroupKind::KleinBottle, Payload::Klein { a: m, b: n }) => {
            let a = if n.rem_euclid(2) == 0 { -m } else { *m };
            Payload::Klein { a, b: -n }
        }
        (GroupKind::Heisenberg, Payload::Heisenberg { x, y, z }) => Payload::Heisenberg {
            x: -x,
            y: -y,
            z: -z - x * y,
        },
        (GroupKind::LaurentSemidirect, Payload::Laurent { poly, z }) => Payload::Laurent {
            poly: poly.negate().shift(-z),
            z: -z,
        },
        (GroupKind::DirectProduct(factors), Payload::Tuple(parts)) => Payload::Tuple(
            factors
                .iter()
                .zip(parts.iter())
                .map(|(f, q)| inv_payload(f, q))
                .collect(),
        ),
        _ => unreachable!("payload shape checked at construction"),
    }
}

fn generator_word_of(group: &Group, p: &Payload) -> Vec<(usize, i64)> {
    match (group.kind(), p) {
        (GroupKind::Free(_), Payload::Word(w)) => w
            .iter()
            .map(|&l| ((l.unsigned_abs() - 1) as usize, l.signum() as i64))
            .collect(),
        (GroupKind::FreeAbelian(_) | GroupKind::FiniteCyclic(_), Payload::Vector(v)) => v
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i, e))
            .collect(),
        (GroupKind::KleinBottle, Payload::Klein { a, b }) => {
            let mut w = Vec::new();
            if *a != 0 {
                w.push((0, *a));
            }
            if *b != 0 {
                w.push((1, *b));
            }
            w
        }
        (GroupKind::Heisenberg, Payload::Heisenberg { x, y, z }) => {
            let mut w = Vec::new();
            if *x != 0 {
                w.push((0, *x));
            }
            if *y != 0 {
                w.push((1, *y));
            }
            if *z != 0 {
                w.push((2, *z));
            }
            w
        }
        // a_k t^(n_k) is the conjugate z^(n_k) u^(a_k) z^(-n_k); the
        // polynomial part is abelian so term order is irrelevant.
        (GroupKind::LaurentSemidirect, Payload::Laurent { poly, z }) => {
            let mut w = Vec::new();
            for &(exp, coeff) in poly.terms() {
                if exp != 0 {
                    w.push((1, exp));
                }
                w.push((0, coeff));
                if exp != 0 {
                    w.push((1, -exp));
                }
            }
            if *z != 0 {
                w.push((1, *z));
            }
            w
        }
        (GroupKind::DirectProduct(factors), Payload::Tuple(parts)) => {
            let mut w = Vec::new();
            let mut offset = 0;
            for (factor, part) in factors.iter().zip(parts.iter()) {
                for (i, e) in generator_word_of(factor, part) {
                    w.push((i + offset, e));
                }
                offset += factor.generator_count();
            }
            w
        }
        _ => unreachable!("payload shape checked at construction"),
    }
}
