//! Linear characters of a group, through the dual of its abelianization.
//!
//! `H/[H,H]` is computed as an explicit abelian quotient; its relation
//! lattice on the quotient generators is reduced by Smith normal form to
//! invariant factors, whose dual enumerates all `|H/[H,H]|` linear
//! characters. Values are stored as root-of-unity exponents modulo the
//! exponent of the abelianization, one per conjugacy class of `H`.

use num_traits::ToPrimitive;

use crate::group::PermGroup;
use crate::snf::{smith_normal_form, RelationLattice};

/// A degree-1 character of a group, constant on conjugacy classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCharacter {
    /// One exponent per conjugacy class of the host group (in canonical
    /// class order); the value on the class is `e^(2πi·exponent/modulus)`.
    pub exponents: Vec<u64>,
    /// Exponent of `H/[H,H]`.
    pub modulus: u64,
}

impl LinearCharacter {
    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }
}

/// All linear characters of `h`, the trivial one first, the rest ordered by
/// their exponent vectors.
pub fn linear_characters(h: &PermGroup) -> Vec<LinearCharacter> {
    let classes = h.conjugacy_classes();
    let derived = h.derived_subgroup();
    let (ab, coset_of) = h
        .quotient_with_map(&derived)
        .expect("the derived subgroup is normal");
    let ab_order = ab.order();
    if ab_order == 1 {
        return vec![LinearCharacter {
            exponents: vec![0; classes.len()],
            modulus: 1,
        }];
    }

    let ab_data = ab.data();
    let m_elems = ab_data.elements.len();
    // Regular action: the element sending coset 0 to point p is unique.
    let mut elem_at_point = vec![u32::MAX; m_elems];
    for (i, p) in ab_data.elements.iter().enumerate() {
        elem_at_point[p.apply(0) as usize] = i as u32;
    }

    let gens = ab.generators();
    let k = gens.len();
    let gen_idx: Vec<u32> = gens.iter().map(|g| ab_data.index[g]).collect();
    let gen_order: Vec<u64> = gen_idx
        .iter()
        .map(|&i| ab_data.elem_order[i as usize] as u64)
        .collect();

    // Walk the Cayley graph, recording a representation vector along a
    // spanning tree; non-tree edges contribute relations, which together
    // with the generator orders span the full relation lattice.
    let mut rep: Vec<Option<Vec<i64>>> = vec![None; m_elems];
    rep[0] = Some(vec![0; k]);
    let mut lattice = RelationLattice::new(k);
    for (j, &o) in gen_order.iter().enumerate() {
        let mut row = vec![0i64; k];
        row[j] = o as i64;
        lattice.insert(&row);
    }
    let mut queue: Vec<u32> = vec![0];
    let mut qi = 0;
    while qi < queue.len() {
        let x = queue[qi];
        qi += 1;
        let rx = rep[x as usize].clone().expect("visited");
        for (j, &g) in gen_idx.iter().enumerate() {
            let y = ab_data.product(x, g);
            let mut r = rx.clone();
            r[j] += 1;
            match &rep[y as usize] {
                None => {
                    rep[y as usize] = Some(r);
                    queue.push(y);
                }
                Some(ry) => {
                    let relation: Vec<i64> =
                        r.iter().zip(ry.iter()).map(|(a, b)| a - b).collect();
                    lattice.insert(&relation);
                }
            }
        }
    }

    let snf = smith_normal_form(&lattice.into_matrix());
    let d: Vec<u64> = snf
        .d
        .iter()
        .map(|x| x.to_u64().expect("invariant factors are small positive"))
        .collect();
    assert_eq!(
        d.iter().product::<u64>(),
        ab_order,
        "invariant factors must multiply to the abelianization order"
    );
    let modulus = *d.iter().max().expect("at least one factor");
    // V reduced modulo the exponent.
    let v: Vec<Vec<u64>> = snf
        .v
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let r = x % num_bigint::BigInt::from(modulus);
                    let r = if r < num_bigint::BigInt::from(0) {
                        r + num_bigint::BigInt::from(modulus)
                    } else {
                        r
                    };
                    r.to_u64().unwrap()
                })
                .collect()
        })
        .collect();

    // Enumerate the dual group: characters correspond to tuples t with
    // 0 ≤ t_i < d_i, via exponents c = V·(t_i·m/d_i).
    let mut characters = Vec::with_capacity(ab_order as usize);
    let mut tuple = vec![0u64; k];
    loop {
        let gen_exponents: Vec<u64> = (0..k)
            .map(|j| {
                (0..k).fold(0u64, |acc, i| {
                    if d[i] == 0 {
                        return acc;
                    }
                    (acc + v[j][i] % modulus * (tuple[i] * (modulus / d[i]) % modulus) % modulus)
                        % modulus
                })
            })
            .collect();
        // Value at each conjugacy-class representative of H.
        let h_data = h.data();
        let exponents: Vec<u64> = classes
            .iter()
            .map(|c| {
                let idx = h_data.index[&c.representative];
                let point = coset_of[idx as usize];
                let ab_elem = elem_at_point[point as usize];
                let r = rep[ab_elem as usize].as_ref().expect("regular action covers all");
                r.iter()
                    .zip(gen_exponents.iter())
                    .fold(0u64, |acc, (&cnt, &e)| {
                        (acc + (cnt as u64 % modulus) * e) % modulus
                    })
            })
            .collect();
        characters.push(LinearCharacter { exponents, modulus });

        // Next tuple.
        let mut i = 0;
        loop {
            if i == k {
                break;
            }
            tuple[i] += 1;
            if tuple[i] < d[i] {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    assert_eq!(
        characters.len() as u64,
        ab_order,
        "dual group has the order of the abelianization"
    );
    characters.sort_by(|a, b| a.exponents.cmp(&b.exponents));
    assert!(characters[0].is_trivial());
    characters
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::NamedGroup;
    use crate::DEFAULT_SIZE_CAP;

    #[test]
    fn cyclic4_has_four_linear_characters() {
        let c4 = NamedGroup::Cyclic(4).construct(DEFAULT_SIZE_CAP).unwrap();
        let chars = linear_characters(&c4);
        assert_eq!(chars.len(), 4);
        assert!(chars[0].is_trivial());
        assert_eq!(chars[0].modulus, 4);
        // All four characters are distinct.
        let set: std::collections::HashSet<Vec<u64>> =
            chars.iter().map(|c| c.exponents.clone()).collect();
        assert_eq!(set.len(), 4);
    }

    #[test]
    fn sym3_has_trivial_and_sign() {
        let s3 = NamedGroup::Sym(3).construct(DEFAULT_SIZE_CAP).unwrap();
        let chars = linear_characters(&s3);
        assert_eq!(chars.len(), 2);
        assert_eq!(chars[1].modulus, 2);
        // The sign character: −1 exactly on the transposition class.
        let orders: Vec<u64> = s3
            .conjugacy_classes()
            .iter()
            .map(|c| c.element_order)
            .collect();
        assert_eq!(orders, vec![1, 2, 3]);
        assert_eq!(chars[1].exponents, vec![0, 1, 0]);
    }

    #[test]
    fn quaternion_group_has_klein_dual() {
        let q8 = NamedGroup::Sl2(3)
            .construct(DEFAULT_SIZE_CAP)
            .unwrap()
            .derived_subgroup();
        assert_eq!(q8.order(), 8);
        let chars = linear_characters(&q8);
        assert_eq!(chars.len(), 4);
        assert!(chars.iter().all(|c| c.modulus == 2 || c.is_trivial()));
    }

    #[test]
    fn abelian_group_has_order_many() {
        let c6 = NamedGroup::Cyclic(6).construct(DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(linear_characters(&c6).len(), 6);
        let v4 = NamedGroup::Dihedral(4).construct(DEFAULT_SIZE_CAP).unwrap();
        let chars = linear_characters(&v4);
        assert_eq!(chars.len(), 4);
        assert!(chars.iter().skip(1).all(|c| c.modulus == 2));
    }

    /// Orthogonality: Σ_h λ(h) is |H| for the trivial character and 0
    /// otherwise, checked in a prime field with a root of unity of the
    /// right order.
    #[test]
    fn linear_character_orthogonality() {
        for named in [
            NamedGroup::Sym(3),
            NamedGroup::Cyclic(6),
            NamedGroup::Dihedral(8),
            NamedGroup::Alt(4),
        ] {
            let h = named.construct(DEFAULT_SIZE_CAP).unwrap();
            let chars = linear_characters(&h);
            let m = chars[0].modulus.max(chars.last().unwrap().modulus);
            // Prime p ≡ 1 mod m with p > |H|.
            let p = (1u64..)
                .map(|k| k * m + 1)
                .find(|&p| p > h.order() && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
                .unwrap();
            let omega = (2..p)
                .find(|&g| {
                    let mut x = 1u64;
                    let mut ord = 0;
                    for i in 1..=m {
                        x = x * g % p;
                        if x == 1 {
                            ord = i;
                            break;
                        }
                    }
                    ord == m
                })
                .map(|g| {
                    // g has order m already by construction below; use g^1.
                    g
                })
                .unwrap_or(1);
            for lambda in &chars {
                let mut total = 0u64;
                for (c, class) in h.conjugacy_classes().iter().enumerate() {
                    let mut val = 1u64;
                    for _ in 0..lambda.exponents[c] * (m / lambda.modulus) {
                        val = val * omega % p;
                    }
                    total = (total + class.size % p * val) % p;
                }
                if lambda.is_trivial() {
                    assert_eq!(total, h.order() % p);
                } else {
                    assert_eq!(total, 0, "non-trivial character must sum to zero");
                }
            }
        }
    }
}
