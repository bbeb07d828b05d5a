//! Standard group constructions: symmetric, alternating, cyclic, dihedral
//! families and the matrix groups SL₂, GL₂, SL₃ over small fields.
//!
//! Matrix groups act faithfully on the nonzero vectors of their natural
//! module (q²−1 or q³−1 points), not on projective space.

use crate::error::{Error, Result};
use crate::field::SmallField;
use crate::group::PermGroup;
use crate::perm::Perm;

/// A named construction from the descriptor language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedGroup {
    Sym(u32),
    Alt(u32),
    Cyclic(u32),
    /// Argument is the group order 2n (acting on n points).
    Dihedral(u32),
    Sl2(u64),
    Gl2(u64),
    Sl3(u64),
}

impl NamedGroup {
    /// Order of the group, without constructing it.
    pub fn order(&self) -> Result<u128> {
        Ok(match *self {
            NamedGroup::Sym(n) => factorial(n as u128),
            NamedGroup::Alt(n) => {
                if n <= 2 {
                    1
                } else {
                    factorial(n as u128) / 2
                }
            }
            NamedGroup::Cyclic(n) => n.max(1) as u128,
            NamedGroup::Dihedral(m) => {
                if m == 0 || m % 2 != 0 {
                    return Err(Error::UnsupportedDescriptor(format!(
                        "Dihedral({m}): the argument is the group order and must be even"
                    )));
                }
                m as u128
            }
            NamedGroup::Sl2(q) => {
                let q = check_prime_power(q)? as u128;
                q * (q - 1) * (q + 1)
            }
            NamedGroup::Gl2(q) => {
                let q = check_prime_power(q)? as u128;
                (q * q - 1) * (q * q - q)
            }
            NamedGroup::Sl3(q) => {
                let q = check_prime_power(q)? as u128;
                q.pow(3) * (q * q - 1) * (q.pow(3) - 1)
            }
        })
    }

    pub fn render(&self) -> String {
        match *self {
            NamedGroup::Sym(n) => format!("Sym({n})"),
            NamedGroup::Alt(n) => format!("Alt({n})"),
            NamedGroup::Cyclic(n) => format!("Cyclic({n})"),
            NamedGroup::Dihedral(m) => format!("Dihedral({m})"),
            NamedGroup::Sl2(q) => format!("SL(2,{q})"),
            NamedGroup::Gl2(q) => format!("GL(2,{q})"),
            NamedGroup::Sl3(q) => format!("SL(3,{q})"),
        }
    }

    /// Builds the permutation group, failing fast when the order exceeds
    /// `cap`. The constructed order is checked against the closed formula.
    pub fn construct(&self, cap: u64) -> Result<PermGroup> {
        let expected = self.order()?;
        if expected > cap as u128 {
            return Err(Error::SizeCapExceeded {
                order: u64::try_from(expected).unwrap_or(u64::MAX),
                cap,
            });
        }
        let group = match *self {
            NamedGroup::Sym(n) => sym(n as usize, cap)?,
            NamedGroup::Alt(n) => alt(n as usize, cap)?,
            NamedGroup::Cyclic(n) => cyclic(n as usize, cap)?,
            NamedGroup::Dihedral(m) => dihedral(m as usize, cap)?,
            NamedGroup::Sl2(q) => matrix_group(q, 2, false, cap)?,
            NamedGroup::Gl2(q) => matrix_group(q, 2, true, cap)?,
            NamedGroup::Sl3(q) => matrix_group(q, 3, false, cap)?,
        };
        if group.order() as u128 != expected {
            return Err(Error::Internal(format!(
                "{} constructed with order {} (expected {expected})",
                self.render(),
                group.order()
            )));
        }
        Ok(group)
    }
}

fn factorial(n: u128) -> u128 {
    (1..=n).fold(1u128, |acc, k| acc.saturating_mul(k))
}

fn check_prime_power(q: u64) -> Result<u64> {
    crate::field::prime_power(q)?;
    Ok(q)
}

fn sym(n: usize, cap: u64) -> Result<PermGroup> {
    let n = n.max(1);
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Perm::from_cycles(n, &[vec![0, 1]])?);
    }
    if n >= 3 {
        gens.push(Perm::from_cycles(n, &[(0..n as u16).collect()])?);
    }
    PermGroup::from_generators(n, gens, cap)
}

fn alt(n: usize, cap: u64) -> Result<PermGroup> {
    let n = n.max(1);
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(Perm::from_cycles(n, &[vec![0, 1, 2]])?);
    }
    if n >= 4 {
        let long: Vec<u16> = if n % 2 == 1 {
            (0..n as u16).collect()
        } else {
            (1..n as u16).collect()
        };
        gens.push(Perm::from_cycles(n, &[long])?);
    }
    PermGroup::from_generators(n, gens, cap)
}

fn cyclic(n: usize, cap: u64) -> Result<PermGroup> {
    let n = n.max(1);
    let gens = if n >= 2 {
        vec![Perm::from_cycles(n, &[(0..n as u16).collect()])?]
    } else {
        Vec::new()
    };
    PermGroup::from_generators(n, gens, cap)
}

fn dihedral(order: usize, cap: u64) -> Result<PermGroup> {
    match order {
        2 => PermGroup::from_generators(2, vec![Perm::from_cycles(2, &[vec![0, 1]])?], cap),
        4 => PermGroup::from_generators(
            4,
            vec![
                Perm::from_cycles(4, &[vec![0, 1]])?,
                Perm::from_cycles(4, &[vec![2, 3]])?,
            ],
            cap,
        ),
        m if m >= 6 && m % 2 == 0 => {
            let n = m / 2;
            let rotation = Perm::from_cycles(n, &[(0..n as u16).collect()])?;
            let reflection_images: Vec<u16> =
                (0..n as u16).map(|i| ((n as u16) - i) % n as u16).collect();
            let reflection = Perm::from_images(reflection_images)?;
            PermGroup::from_generators(n, vec![rotation, reflection], cap)
        }
        m => Err(Error::UnsupportedDescriptor(format!(
            "Dihedral({m}): the argument is the group order and must be even"
        ))),
    }
}

/// Index of a nonzero vector over F_q in lexicographic order (leading
/// coordinate most significant); the zero vector would be index −1.
fn vec_index(field: &SmallField, v: &[u16]) -> usize {
    let mut value = 0usize;
    for &c in v {
        value = value * field.q + c as usize;
    }
    value - 1
}

fn matrix_to_perm(field: &SmallField, dim: usize, m: &[Vec<u16>]) -> Result<Perm> {
    let points = field.q.pow(dim as u32) - 1;
    let mut images = vec![0u16; points];
    let mut v = vec![0u16; dim];
    for idx in 0..points {
        // Decode idx + 1 into the vector.
        let mut value = idx + 1;
        for i in (0..dim).rev() {
            v[i] = (value % field.q) as u16;
            value /= field.q;
        }
        let mut w = vec![0u16; dim];
        for i in 0..dim {
            let mut acc = 0u16;
            for j in 0..dim {
                acc = field.add(acc, field.mul(m[i][j], v[j]));
            }
            w[i] = acc;
        }
        images[idx] = vec_index(field, &w) as u16;
    }
    Perm::from_images(images)
}

fn matrix_group(q: u64, dim: usize, general: bool, cap: u64) -> Result<PermGroup> {
    let field = SmallField::new(q)?;
    let degree = field.q.pow(dim as u32) - 1;
    if degree > crate::group::MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree,
            max: crate::group::MAX_DEGREE,
        });
    }
    let mut gens = Vec::new();
    // Elementary transvections over a basis of F_q generate SL(dim, q).
    for i in 0..dim {
        for j in 0..dim {
            if i == j {
                continue;
            }
            for t in 0..field.degree {
                let mut m: Vec<Vec<u16>> = (0..dim)
                    .map(|r| (0..dim).map(|c| u16::from(r == c)).collect())
                    .collect();
                m[i][j] = field.basis_element(t);
                gens.push(matrix_to_perm(&field, dim, &m)?);
            }
        }
    }
    if general {
        // A primitive scaling on the first coordinate extends SL to GL.
        let mut m: Vec<Vec<u16>> = (0..dim)
            .map(|r| (0..dim).map(|c| u16::from(r == c)).collect())
            .collect();
        m[0][0] = field.primitive();
        gens.push(matrix_to_perm(&field, dim, &m)?);
    }
    PermGroup::from_generators(degree, gens, cap)
}

/// The Mathieu group M₁₀ as a degree-10 permutation group of order 720.
///
/// Realized on the projective line over F₉ (points: the nine field elements,
/// then ∞ as point 9): linear fractional maps of square determinant together
/// with the twisting map z ↦ g·z³ (field cube composed with a non-square
/// scaling), which lies outside both PGL₂(9) and the Frobenius extension.
pub fn mathieu_m10(cap: u64) -> Result<PermGroup> {
    let field = SmallField::new(9)?;
    let infinity = 9u16;
    let g = field.primitive();
    let g2 = field.mul(g, g);
    // Maps fixing ∞.
    let on_line = |f: &dyn Fn(u16) -> u16| -> Result<Perm> {
        let mut images = vec![0u16; 10];
        for z in 0..9u16 {
            images[z as usize] = f(z);
        }
        images[infinity as usize] = infinity;
        Perm::from_images(images)
    };
    let translation = on_line(&|z| field.add(z, 1))?;
    let scaling = on_line(&|z| field.mul(g2, z))?;
    // z ↦ −1/z exchanges 0 and ∞.
    let mut inv_images = vec![0u16; 10];
    for z in 1..9u16 {
        inv_images[z as usize] = field.neg(field.inv(z));
    }
    inv_images[0] = infinity;
    inv_images[infinity as usize] = 0;
    let inversion = Perm::from_images(inv_images)?;
    let twist = on_line(&|z| field.mul(g, field.mul(z, field.mul(z, z))))?;
    let group = PermGroup::from_generators(
        10,
        vec![translation, scaling, inversion, twist],
        cap,
    )?;
    if group.order() != 720 {
        return Err(Error::Internal(format!(
            "M10 constructed with order {}",
            group.order()
        )));
    }
    Ok(group)
}
