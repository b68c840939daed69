use super::{Element, Group, GroupError, GroupKind};

/// A homomorphism between built-in groups, described by generator images.
///
/// Construction checks that the images respect the defining relations of the
/// source. The polynomial part of `laurent-z` is infinitely related, so its
/// commutation relations are spot-checked on conjugation depths 1 and 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: Group,
    target: Group,
    images: Vec<Element>,
}

impl Homomorphism {
    pub fn new(source: Group, target: Group, images: Vec<Element>) -> Result<Self, GroupError> {
        if images.len() != source.generator_count() {
            return Err(GroupError::WrongImageCount {
                expected: source.generator_count(),
                found: images.len(),
            });
        }
        for (index, image) in images.iter().enumerate() {
            if image.group() != &target {
                return Err(GroupError::ImageOwnerMismatch { index });
            }
        }
        let hom = Homomorphism {
            source,
            target,
            images,
        };
        for (name, word) in defining_relations(&hom.source) {
            if !hom.apply_word(&word).is_identity() {
                return Err(GroupError::RelationViolated { relation: name });
            }
        }
        Ok(hom)
    }

    pub fn identity(group: &Group) -> Self {
        Homomorphism {
            source: group.clone(),
            target: group.clone(),
            images: group.generators(),
        }
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, g: &Element) -> Result<Element, GroupError> {
        if g.group() != &self.source {
            return Err(GroupError::OwnerMismatch {
                expected: self.source.to_string(),
                found: g.group().to_string(),
            });
        }
        Ok(self.apply_word(&g.generator_word()))
    }

    pub fn kernel_contains(&self, g: &Element) -> Result<bool, GroupError> {
        Ok(self.apply(g)?.is_identity())
    }

    fn apply_word(&self, word: &[(usize, i64)]) -> Element {
        let mut acc = self.target.identity();
        for &(index, exp) in word {
            acc = acc
                .multiply(&self.images[index].pow(exp))
                .expect("same owner");
        }
        acc
    }

    /// The exponent-sum map onto the infinite cyclic part: `a -> 0, b -> 1`.
    pub fn klein_b_exponent() -> Self {
        let klein = Group::klein_bottle();
        let z = Group::free_abelian(1).expect("rank 1");
        Homomorphism::new(klein, z.clone(), vec![z.identity(), z.generator(0)])
            .expect("relation holds")
    }

    /// Abelianization onto rank two; the commutator generator dies.
    pub fn heisenberg_abelianization() -> Self {
        let heis = Group::heisenberg();
        let z2 = Group::free_abelian(2).expect("rank 2");
        Homomorphism::new(
            heis,
            z2.clone(),
            vec![z2.generator(0), z2.generator(1), z2.identity()],
        )
        .expect("relation holds")
    }

    /// The z-exponent map on `laurent-z`; the polynomial part is the kernel.
    pub fn laurent_z_exponent() -> Self {
        let laurent = Group::laurent_semidirect();
        let z = Group::free_abelian(1).expect("rank 1");
        Homomorphism::new(laurent, z.clone(), vec![z.identity(), z.generator(0)])
            .expect("relation holds")
    }
}

/// Words over generator indices that must map to the identity, labelled for
/// error reporting.
fn defining_relations(group: &Group) -> Vec<(String, Vec<(usize, i64)>)> {
    match group.kind() {
        GroupKind::Free(_) => Vec::new(),
        GroupKind::FreeAbelian(n) => {
            let mut rels = Vec::new();
            for i in 0..*n as usize {
                for j in (i + 1)..*n as usize {
                    rels.push((format!("[g{i}, g{j}]"), commutator(i, j)));
                }
            }
            rels
        }
        GroupKind::FiniteCyclic(n) => vec![("a^n".to_owned(), vec![(0, *n as i64)])],
        GroupKind::KleinBottle => vec![(
            "b a b^-1 a".to_owned(),
            vec![(1, 1), (0, 1), (1, -1), (0, 1)],
        )],
        GroupKind::Heisenberg => vec![
            (
                "z^-1 [x, y]".to_owned(),
                vec![(2, -1), (0, -1), (1, -1), (0, 1), (1, 1)],
            ),
            ("[x, z]".to_owned(), commutator(0, 2)),
            ("[y, z]".to_owned(), commutator(1, 2)),
        ],
        GroupKind::LaurentSemidirect => {
            // [u, z^k u z^-k] for small k; the full relation family is
            // infinite.
            let conj = |k: i64| -> Vec<(usize, i64)> {
                let mut w = vec![(0usize, -1i64)];
                w.extend([(1, k), (0, -1), (1, -k)]);
                w.push((0, 1));
                w.extend([(1, k), (0, 1), (1, -k)]);
                w
            };
            vec![
                ("[u, z u z^-1]".to_owned(), conj(1)),
                ("[u, z^2 u z^-2]".to_owned(), conj(2)),
            ]
        }
        GroupKind::DirectProduct(factors) => {
            let mut rels = Vec::new();
            let mut offset = 0;
            let mut spans = Vec::new();
            for factor in factors {
                for (name, word) in defining_relations(factor) {
                    let shifted = word.iter().map(|&(i, e)| (i + offset, e)).collect();
                    rels.push((name, shifted));
                }
                spans.push((offset, factor.generator_count()));
                offset += factor.generator_count();
            }
            for (fi, &(off_i, len_i)) in spans.iter().enumerate() {
                for &(off_j, len_j) in spans.iter().skip(fi + 1) {
                    for i in off_i..off_i + len_i {
                        for j in off_j..off_j + len_j {
                            rels.push((format!("[g{i}, g{j}]"), commutator(i, j)));
                        }
                    }
                }
            }
            rels
        }
    }
}

fn commutator(i: usize, j: usize) -> Vec<(usize, i64)> {
    vec![(i, -1), (j, -1), (i, 1), (j, 1)]
}
