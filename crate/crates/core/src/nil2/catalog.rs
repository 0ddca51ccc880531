use super::{nil2_make, Nil2Group};
use crate::abelian::{AbElement, FGAbelian};
use crate::error::Result;

fn two_generator(p: i64, carry: [i64; 2]) -> Result<Nil2Group> {
    let a = FGAbelian::new(&[p, p])?;
    let b = FGAbelian::new(&[p])?;
    let z = AbElement(vec![0]);
    let bil = vec![vec![z.clone(), AbElement(vec![1])], vec![z.clone(), z]];
    let carry = carry.iter().map(|&c| AbElement(vec![c])).collect();
    nil2_make(a, b, bil, carry)
}

/// `Z/d` (`d = 0` gives `Z`).
pub fn cyclic(d: i64) -> Result<Nil2Group> {
    Ok(Nil2Group::abelian(&FGAbelian::new(&[d])?))
}

pub fn dihedral4() -> Result<Nil2Group> {
    two_generator(2, [1, 0])
}

pub fn quaternion8() -> Result<Nil2Group> {
    two_generator(2, [1, 1])
}

/// Heisenberg group mod `p`, isomorphic to `Z/p v Z/p` for odd `p`.
pub fn heisenberg(p: i64) -> Result<Nil2Group> {
    two_generator(p, [0, 0])
}

/// `Z/p^2 x| Z/p`, the action being multiplication by `p + 1`.
pub fn semidirect_encoded(p: i64) -> Result<Nil2Group> {
    two_generator(p, [1, 0])
}

/// Named groups available everywhere a group name is accepted.
pub fn catalog() -> Result<Vec<(&'static str, Nil2Group)>> {
    let ab = |o: &[i64]| -> Result<Nil2Group> { Ok(Nil2Group::abelian(&FGAbelian::new(o)?)) };
    Ok(vec![
        ("trivial", Nil2Group::trivial()),
        ("Z", cyclic(0)?),
        ("Z2", cyclic(2)?),
        ("Z3", cyclic(3)?),
        ("Z4", cyclic(4)?),
        ("Z8", cyclic(8)?),
        ("Z9", cyclic(9)?),
        ("Z27", cyclic(27)?),
        ("Z2xZ2", ab(&[2, 2])?),
        ("Z2xZ4", ab(&[2, 4])?),
        ("Z2^3", ab(&[2, 2, 2])?),
        ("Z3xZ9", ab(&[3, 9])?),
        ("Z3^3", ab(&[3, 3, 3])?),
        ("D4", dihedral4()?),
        ("Q8", quaternion8()?),
        ("Heis3", heisenberg(3)?),
        ("Heis5", heisenberg(5)?),
        ("Z9sdZ3", semidirect_encoded(3)?),
        ("Z25sdZ5", semidirect_encoded(5)?),
    ])
}

pub fn catalog_names() -> Vec<&'static str> {
    catalog()
        .map(|c| c.into_iter().map(|(n, _)| n).collect())
        .unwrap_or_default()
}
