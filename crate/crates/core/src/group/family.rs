//! Builtin group family constructors.
//!
//! Each family yields a [`GroupSpec`] with a small faithful permutation
//! representation: cyclic and abelian types as disjoint cycles, the
//! dihedral/semidihedral/modular families as affine maps `x -> ax + b` on
//! `Z/p^(m-1)`, generalized quaternion groups via their left-regular
//! action, the odd extraspecial exponent-p group as affine shears on a
//! p x p grid, and `C_p wr C_p` in its natural imprimitive action.

use super::{GroupError, GroupSpec};
use crate::perm::Permutation;

/// Default cap on the order of a built group. Configurable per call and
/// through the CLI; element ids are 16-bit so caps are clamped to 65535.
pub const DEFAULT_ORDER_CAP: usize = 256;

/// The two isomorphism types of extraspecial groups of order `p^3`,
/// labelled `+`/`-` as usual: for odd p, `Plus` is the exponent-p
/// (Heisenberg) type and `Minus` the exponent-p^2 type; for p = 2 they
/// are the dihedral and quaternion groups of order 8.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtraspecialKind {
    Plus,
    Minus,
}

/// A catalogue family reference with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `C_{p^k}`; `k = 0` gives the trivial group.
    Cyclic { p: usize, k: u32 },
    /// Abelian group of type `C_{p^k1} x C_{p^k2} x ...`.
    AbelianType { p: usize, partition: Vec<u32> },
    /// `(C_p)^rank`.
    ElementaryAbelian { p: usize, rank: u32 },
    /// Dihedral group of order `2^m`, `m >= 3`.
    Dihedral { m: u32 },
    /// Generalized quaternion group of order `2^m`, `m >= 3`.
    Quaternion { m: u32 },
    /// Semidihedral group of order `2^m`, `m >= 4`.
    Semidihedral { m: u32 },
    /// Modular maximal-cyclic group of order `p^m`, `m >= 3`.
    Modular { p: usize, m: u32 },
    /// Extraspecial group of order `p^3`.
    Extraspecial { p: usize, kind: ExtraspecialKind },
    /// The regular wreath product `C_p wr C_p`, of order `p^(p+1)`.
    Wreath { p: usize },
}

impl FamilyKind {
    /// Order of the group this family builds.
    pub fn order(&self) -> Option<usize> {
        match self {
            FamilyKind::Cyclic { p, k } => p.checked_pow(*k),
            FamilyKind::AbelianType { p, partition } => {
                let total: u32 = partition.iter().sum();
                p.checked_pow(total)
            }
            FamilyKind::ElementaryAbelian { p, rank } => p.checked_pow(*rank),
            FamilyKind::Dihedral { m }
            | FamilyKind::Quaternion { m }
            | FamilyKind::Semidihedral { m } => 2usize.checked_pow(*m),
            FamilyKind::Modular { p, m } => p.checked_pow(*m),
            FamilyKind::Extraspecial { p, .. } => p.checked_pow(3),
            FamilyKind::Wreath { p } => p.checked_pow(*p as u32 + 1),
        }
    }

    /// Parses a single family reference like `dihedral:3`, `cyclic:2,3`,
    /// `abelian:2,2,1`, `extraspecial:3,+` or `wreath:3`.
    pub fn parse(text: &str) -> Result<FamilyKind, GroupError> {
        let (name, args) = match text.split_once(':') {
            Some((n, a)) => (n, a),
            None => (text, ""),
        };
        let ints = |s: &str| -> Result<Vec<usize>, GroupError> {
            s.split(',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| GroupError::BadParams(format!("`{t}` is not an integer")))
                })
                .collect()
        };
        let kind = match name {
            "cyclic" => {
                let v = ints(args)?;
                let [p, k] = exactly::<2>(&v, "cyclic:p,k")?;
                FamilyKind::Cyclic { p, k: k as u32 }
            }
            "abelian" => {
                let v = ints(args)?;
                if v.len() < 2 {
                    return Err(GroupError::BadParams("abelian:p,k1,k2,... needs a prime and at least one part".into()));
                }
                FamilyKind::AbelianType {
                    p: v[0],
                    partition: v[1..].iter().map(|&k| k as u32).collect(),
                }
            }
            "elem" | "elementary" => {
                let v = ints(args)?;
                let [p, rank] = exactly::<2>(&v, "elem:p,rank")?;
                FamilyKind::ElementaryAbelian { p, rank: rank as u32 }
            }
            "dihedral" => {
                let v = ints(args)?;
                let [m] = exactly::<1>(&v, "dihedral:m")?;
                FamilyKind::Dihedral { m: m as u32 }
            }
            "quaternion" => {
                let v = ints(args)?;
                let [m] = exactly::<1>(&v, "quaternion:m")?;
                FamilyKind::Quaternion { m: m as u32 }
            }
            "semidihedral" => {
                let v = ints(args)?;
                let [m] = exactly::<1>(&v, "semidihedral:m")?;
                FamilyKind::Semidihedral { m: m as u32 }
            }
            "modular" => {
                let v = ints(args)?;
                let [p, m] = exactly::<2>(&v, "modular:p,m")?;
                FamilyKind::Modular { p, m: m as u32 }
            }
            "extraspecial" => {
                let (p_str, kind_str) = args.split_once(',').ok_or_else(|| {
                    GroupError::BadParams("extraspecial:p,+ or extraspecial:p,-".into())
                })?;
                let p = p_str
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| GroupError::BadParams(format!("`{p_str}` is not an integer")))?;
                let kind = match kind_str.trim() {
                    "+" => ExtraspecialKind::Plus,
                    "-" => ExtraspecialKind::Minus,
                    other => {
                        return Err(GroupError::BadParams(format!(
                            "extraspecial type must be + or -, got `{other}`"
                        )))
                    }
                };
                FamilyKind::Extraspecial { p, kind }
            }
            "wreath" => {
                let v = ints(args)?;
                let [p] = exactly::<1>(&v, "wreath:p")?;
                FamilyKind::Wreath { p }
            }
            other => return Err(GroupError::UnknownFamily(other.to_string())),
        };
        Ok(kind)
    }
}

fn exactly<const N: usize>(v: &[usize], usage: &str) -> Result<[usize; N], GroupError> {
    v.try_into()
        .map_err(|_| GroupError::BadParams(format!("expected {usage}")))
}

fn require_prime(p: usize) -> Result<(), GroupError> {
    let is_prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0);
    if is_prime {
        Ok(())
    } else {
        Err(GroupError::BadParams(format!("{p} is not prime")))
    }
}

/// Builds the [`GroupSpec`] for a catalogue family.
pub fn family(kind: &FamilyKind) -> Result<GroupSpec, GroupError> {
    match kind {
        FamilyKind::Cyclic { p, k } => {
            require_prime(*p)?;
            abelian_type_spec(*p, &[*k])
        }
        FamilyKind::AbelianType { p, partition } => {
            require_prime(*p)?;
            if partition.is_empty() || partition.iter().any(|&k| k == 0) {
                return Err(GroupError::BadParams(
                    "abelian type needs positive parts".into(),
                ));
            }
            abelian_type_spec(*p, partition)
        }
        FamilyKind::ElementaryAbelian { p, rank } => {
            require_prime(*p)?;
            abelian_type_spec(*p, &vec![1; *rank as usize])
        }
        FamilyKind::Dihedral { m } => {
            if *m < 3 {
                return Err(GroupError::BadParams("dihedral needs m >= 3".into()));
            }
            let h = 1usize << (m - 1);
            let rot = Permutation::new((0..h).map(|x| (x + 1) % h).collect())?;
            let refl = Permutation::new((0..h).map(|x| (h - x) % h).collect())?;
            GroupSpec::new(format!("D{}", 1usize << m), h, vec![rot, refl])
        }
        FamilyKind::Quaternion { m } => {
            if *m < 3 {
                return Err(GroupError::BadParams("quaternion needs m >= 3".into()));
            }
            quaternion_spec(*m)
        }
        FamilyKind::Semidihedral { m } => {
            if *m < 4 {
                return Err(GroupError::BadParams(
                    "semidihedral needs m >= 4 (order 16 is the smallest)".into(),
                ));
            }
            let h = 1usize << (m - 1);
            let a = (1usize << (m - 2)) - 1;
            let rot = Permutation::new((0..h).map(|x| (x + 1) % h).collect())?;
            let twist = Permutation::new((0..h).map(|x| a * x % h).collect())?;
            GroupSpec::new(format!("SD{}", 1usize << m), h, vec![rot, twist])
        }
        FamilyKind::Modular { p, m } => {
            require_prime(*p)?;
            if *m < 3 {
                return Err(GroupError::BadParams("modular needs m >= 3".into()));
            }
            modular_spec(*p, *m)
        }
        FamilyKind::Extraspecial { p, kind } => {
            require_prime(*p)?;
            if *p == 2 {
                return match kind {
                    ExtraspecialKind::Plus => family(&FamilyKind::Dihedral { m: 3 }),
                    ExtraspecialKind::Minus => family(&FamilyKind::Quaternion { m: 3 }),
                };
            }
            match kind {
                ExtraspecialKind::Plus => heisenberg_spec(*p),
                // The exponent-p^2 extraspecial group of order p^3 is the
                // modular maximal-cyclic group M_{p^3}.
                ExtraspecialKind::Minus => modular_spec(*p, 3),
            }
        }
        FamilyKind::Wreath { p } => {
            require_prime(*p)?;
            wreath_spec(*p)
        }
    }
}

/// Direct product of two specs, acting on the disjoint union of their
/// point sets.
pub fn direct_product(a: &GroupSpec, b: &GroupSpec) -> Result<GroupSpec, GroupError> {
    let degree = a.degree + b.degree;
    let mut generators = Vec::with_capacity(a.generators.len() + b.generators.len());
    for g in &a.generators {
        let mut images: Vec<usize> = g.images().to_vec();
        images.extend(a.degree..degree);
        generators.push(Permutation::new(images)?);
    }
    for g in &b.generators {
        let mut images: Vec<usize> = (0..a.degree).collect();
        images.extend(g.images().iter().map(|&x| x + a.degree));
        generators.push(Permutation::new(images)?);
    }
    GroupSpec::new(format!("{}x{}", a.name, b.name), degree, generators)
}

/// Parses a family reference that may be a product, e.g.
/// `dihedral:3xcyclic:2,1`.
pub fn parse_family_ref(text: &str) -> Result<GroupSpec, GroupError> {
    let mut spec: Option<GroupSpec> = None;
    for part in text.split('x') {
        let next = family(&FamilyKind::parse(part)?)?;
        spec = Some(match spec {
            None => next,
            Some(prev) => direct_product(&prev, &next)?,
        });
    }
    spec.ok_or_else(|| GroupError::UnknownFamily(String::new()))
}

fn abelian_type_spec(p: usize, partition: &[u32]) -> Result<GroupSpec, GroupError> {
    let mut parts: Vec<u32> = partition.to_vec();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    if parts.is_empty() || parts == [0] {
        // Trivial group.
        return GroupSpec::new("C1", 1, vec![Permutation::identity(1)]);
    }
    let name = parts
        .iter()
        .map(|&k| format!("C{}", p.pow(k)))
        .collect::<Vec<_>>()
        .join("x");
    let degree: usize = parts.iter().map(|&k| p.pow(k) as usize).sum();
    let mut generators = Vec::new();
    let mut offset = 0usize;
    for &k in &parts {
        let len = p.pow(k) as usize;
        let mut images: Vec<usize> = (0..degree).collect();
        for i in 0..len {
            images[offset + i] = offset + (i + 1) % len;
        }
        generators.push(Permutation::new(images)?);
        offset += len;
    }
    GroupSpec::new(name, degree, generators)
}

/// Left-regular action of `<a, b | a^(2^(m-1)) = 1, b^2 = a^(2^(m-2)),
/// b a b^-1 = a^-1>` on its 2^m elements, encoded as `i + j * 2^(m-1)`
/// for the element `a^i b^j`.
fn quaternion_spec(m: u32) -> Result<GroupSpec, GroupError> {
    let h = 1usize << (m - 1);
    let q = 1usize << (m - 2);
    let idx = |i: usize, j: usize| i % h + j * h;
    let mut left_a = vec![0usize; 2 * h];
    let mut left_b = vec![0usize; 2 * h];
    for i in 0..h {
        for j in 0..2 {
            // a * (a^i b^j) = a^(i+1) b^j
            left_a[idx(i, j)] = idx(i + 1, j);
            // b * (a^i b^j) = a^(-i) b^(1+j), with b^2 = a^q
            left_b[idx(i, j)] = if j == 0 {
                idx(h - i, 1)
            } else {
                idx(h - i + q, 0)
            };
        }
    }
    GroupSpec::new(
        format!("Q{}", 1usize << m),
        2 * h,
        vec![Permutation::new(left_a)?, Permutation::new(left_b)?],
    )
}

fn modular_spec(p: usize, m: u32) -> Result<GroupSpec, GroupError> {
    let h = p.pow(m - 1) as usize;
    let a = p.pow(m - 2) as usize + 1;
    let rot = Permutation::new((0..h).map(|x| (x + 1) % h).collect())?;
    let twist = Permutation::new((0..h).map(|x| a * x % h).collect())?;
    GroupSpec::new(format!("M{}", p.pow(m)), h, vec![rot, twist])
}

/// The extraspecial group of order p^3 and exponent p (p odd), acting on
/// the p x p grid by `(u, v) -> (u+1, v)` and `(u, v) -> (u, v+u)`.
fn heisenberg_spec(p: usize) -> Result<GroupSpec, GroupError> {
    let idx = |u: usize, v: usize| (u % p) * p + v % p;
    let mut shift = vec![0usize; p * p];
    let mut shear = vec![0usize; p * p];
    for u in 0..p {
        for v in 0..p {
            shift[idx(u, v)] = idx(u + 1, v);
            shear[idx(u, v)] = idx(u, v + u);
        }
    }
    GroupSpec::new(
        format!("H{}", p.pow(3)),
        p * p,
        vec![Permutation::new(shift)?, Permutation::new(shear)?],
    )
}

/// `C_p wr C_p` on p blocks of p points: one cycle inside the first
/// block plus the block rotation.
fn wreath_spec(p: usize) -> Result<GroupSpec, GroupError> {
    let degree = p * p;
    let mut base = (0..degree).collect::<Vec<_>>();
    for i in 0..p {
        base[i] = (i + 1) % p;
    }
    let top = (0..degree)
        .map(|x| (x + p) % degree)
        .collect::<Vec<_>>();
    GroupSpec::new(
        format!("C{p}wrC{p}"),
        degree,
        vec![Permutation::new(base)?, Permutation::new(top)?],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;
    use std::collections::BTreeMap;

    fn order_histogram(kind: &FamilyKind) -> BTreeMap<u32, usize> {
        let g = build_group(&family(kind).unwrap()).unwrap();
        let mut hist = BTreeMap::new();
        for x in 0..g.order() {
            *hist.entry(g.order_of(x)).or_insert(0) += 1;
        }
        hist
    }

    #[test]
    fn dihedral_census() {
        let hist = order_histogram(&FamilyKind::Dihedral { m: 3 });
        assert_eq!(hist, BTreeMap::from([(1, 1), (2, 5), (4, 2)]));
        let g = build_group(&family(&FamilyKind::Dihedral { m: 4 }).unwrap()).unwrap();
        assert_eq!(g.order(), 16);
        assert_eq!(g.exponent_log(), 3);
    }

    #[test]
    fn quaternion_has_one_involution() {
        let hist = order_histogram(&FamilyKind::Quaternion { m: 3 });
        assert_eq!(hist, BTreeMap::from([(1, 1), (2, 1), (4, 6)]));
        let hist16 = order_histogram(&FamilyKind::Quaternion { m: 4 });
        assert_eq!(hist16[&2], 1);
        assert_eq!(hist16[&8], 8);
    }

    #[test]
    fn semidihedral_census() {
        let hist = order_histogram(&FamilyKind::Semidihedral { m: 4 });
        assert_eq!(hist, BTreeMap::from([(1, 1), (2, 5), (4, 6), (8, 4)]));
        assert!(family(&FamilyKind::Semidihedral { m: 3 }).is_err());
    }

    #[test]
    fn modular_census() {
        let hist = order_histogram(&FamilyKind::Modular { p: 2, m: 4 });
        assert_eq!(hist, BTreeMap::from([(1, 1), (2, 3), (4, 4), (8, 8)]));
        let g = build_group(&family(&FamilyKind::Modular { p: 3, m: 3 }).unwrap()).unwrap();
        assert_eq!(g.order(), 27);
        assert_eq!(g.exponent_log(), 2);
        assert!(!g.is_abelian());
    }

    #[test]
    fn elementary_abelian_shape() {
        let g = build_group(
            &family(&FamilyKind::ElementaryAbelian { p: 3, rank: 2 }).unwrap(),
        )
        .unwrap();
        assert_eq!(g.order(), 9);
        assert_eq!(g.exponent_log(), 1);
        assert!(g.is_abelian());
    }

    #[test]
    fn abelian_type_and_names() {
        let spec = family(&FamilyKind::AbelianType {
            p: 2,
            partition: vec![1, 2],
        })
        .unwrap();
        assert_eq!(spec.name, "C4xC2");
        let g = build_group(&spec).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.exponent_log(), 2);
        assert!(g.is_abelian());
    }

    #[test]
    fn extraspecial_types() {
        let plus = build_group(&family(&FamilyKind::Extraspecial { p: 3, kind: ExtraspecialKind::Plus }).unwrap()).unwrap();
        assert_eq!(plus.order(), 27);
        assert_eq!(plus.exponent_log(), 1);
        assert!(!plus.is_abelian());

        let minus = build_group(&family(&FamilyKind::Extraspecial { p: 3, kind: ExtraspecialKind::Minus }).unwrap()).unwrap();
        assert_eq!(minus.order(), 27);
        assert_eq!(minus.exponent_log(), 2);
        assert!(!minus.is_abelian());

        let d8 = build_group(&family(&FamilyKind::Extraspecial { p: 2, kind: ExtraspecialKind::Plus }).unwrap()).unwrap();
        assert_eq!(d8.name(), "D8");
    }

    #[test]
    fn wreath_product_shape() {
        let g = build_group(&family(&FamilyKind::Wreath { p: 2 }).unwrap()).unwrap();
        assert_eq!(g.order(), 8);
        let g3 = build_group(&family(&FamilyKind::Wreath { p: 3 }).unwrap()).unwrap();
        assert_eq!(g3.order(), 81);
        assert!(!g3.is_abelian());
    }

    #[test]
    fn direct_products() {
        let d8 = family(&FamilyKind::Dihedral { m: 3 }).unwrap();
        let c2 = family(&FamilyKind::Cyclic { p: 2, k: 1 }).unwrap();
        let prod = direct_product(&d8, &c2).unwrap();
        assert_eq!(prod.name, "D8xC2");
        let g = build_group(&prod).unwrap();
        assert_eq!(g.order(), 16);
        assert_eq!(g.exponent_log(), 2);
    }

    #[test]
    fn parse_family_refs() {
        let spec = parse_family_ref("dihedral:3xcyclic:2,1").unwrap();
        assert_eq!(spec.name, "D8xC2");
        assert!(parse_family_ref("frobnicator:7").is_err());
        assert!(matches!(
            FamilyKind::parse("cyclic:4,2"),
            Ok(FamilyKind::Cyclic { p: 4, .. })
        ));
        // Non-prime p is rejected at build time.
        assert!(family(&FamilyKind::Cyclic { p: 4, k: 1 }).is_err());
    }
}
