//! Exceptional orbits, the exceptional parts `Ξ(W,i)` and their complements,
//! and the characters of trivial source lifts.

use thiserror::Error;

use crate::arith::{is_prime, multiplicative_order, pow};
use crate::classification::{CaseTag, PathDescriptor};
use crate::local::{self, CyclicCharacter, CyclicGroup, EndoPermParams, LocalError};
use crate::tree::{Block, BlockCharacter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharacterError {
    #[error("e = {e} does not divide p-1 = {}", .p - 1)]
    InertialIndex { p: u64, e: u64 },
    #[error("p = {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("the block has no exceptional characters (m = 1)")]
    NoExceptional,
    #[error("vertex index {i} is outside [1, {n}]")]
    VertexIndex { i: u32, n: u32 },
    #[error("consistency failure: {0}")]
    Consistency(String),
    #[error(transparent)]
    Local(#[from] LocalError),
}

/// The orbits of `⟨a⟩ ≤ (Z/p^n)^×`, `a` of order `e`, on `{1, …, p^n - 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitStructure {
    pub p: u64,
    pub n: u32,
    pub e: u64,
    /// Smallest positive integer of multiplicative order `e` modulo `p^n`.
    pub a: u64,
    /// Orbit minima `κ(1) < … < κ(m)`.
    pub representatives: Vec<u64>,
    /// Sorted orbits, parallel to `representatives`.
    pub orbits: Vec<Vec<u64>>,
    orbit_of: Vec<usize>,
}

impl OrbitStructure {
    pub fn m(&self) -> usize {
        self.representatives.len()
    }

    /// Position `r - 1` of the orbit containing `kappa` (`1 ≤ kappa < p^n`).
    pub fn orbit_of(&self, kappa: u64) -> usize {
        self.orbit_of[kappa as usize]
    }

    /// Re-normalizes an arbitrary orbit member to its representative.
    pub fn representative(&self, kappa: u64) -> u64 {
        self.representatives[self.orbit_of(kappa)]
    }
}

pub fn exceptional_orbits(p: u64, n: u32, e: u64) -> Result<OrbitStructure, CharacterError> {
    if p == 2 || !is_prime(p) {
        return Err(CharacterError::NotOddPrime(p));
    }
    if n == 0 {
        return Err(LocalError::ZeroDefect.into());
    }
    if e == 0 || !(p - 1).is_multiple_of(e) {
        return Err(CharacterError::InertialIndex { p, e });
    }
    let order = pow(p, n);
    let a = (1..order)
        .find(|&a| multiplicative_order(a, order) == Some(e))
        .expect("(Z/p^n)^x is cyclic, so every divisor of p-1 occurs as an order");
    let mut orbit_of = vec![usize::MAX; order as usize];
    let (mut representatives, mut orbits) = (Vec::new(), Vec::new());
    for kappa in 1..order {
        if orbit_of[kappa as usize] != usize::MAX {
            continue;
        }
        let mut orbit = Vec::with_capacity(e as usize);
        let mut x = kappa;
        loop {
            orbit_of[x as usize] = orbits.len();
            orbit.push(x);
            x = x * a % order;
            if x == kappa {
                break;
            }
        }
        orbit.sort_unstable();
        representatives.push(kappa);
        orbits.push(orbit);
    }
    Ok(OrbitStructure { p, n, e, a, representatives, orbits, orbit_of })
}

/// `(t(i), d_0)` with `d_0 = 1` iff `t(i)` is odd, `-1` counting as odd.
pub fn t_and_d0(w: &EndoPermParams, g: &CyclicGroup, i: u32) -> Result<(i32, i64), CharacterError> {
    let t = local::t_index(w, g, i)?;
    Ok((t, i64::from(t.rem_euclid(2) == 1)))
}

fn check_vertex(block: &Block, i: u32) -> Result<&OrbitStructure, CharacterError> {
    if i == 0 || i > block.n() {
        return Err(CharacterError::VertexIndex { i, n: block.n() });
    }
    block.orbits().ok_or(CharacterError::NoExceptional)
}

/// Coordinates of `Ξ(W,i)` at `κ(1), …, κ(m)`.
pub fn xi_coordinates(w: &EndoPermParams, orbits: &OrbitStructure, i: u32) -> Result<Vec<i64>, CharacterError> {
    let g = CyclicGroup::new(orbits.p, orbits.n)?;
    let below = local::restricted_cap_params(w, &g, i)?;
    let top_sign = if below.indices().len() % 2 == 0 { 1 } else { -1 };
    let coords: Vec<i64> = orbits
        .representatives
        .iter()
        .map(|&kappa| {
            let mut c = 0;
            for (j, &ij) in below.indices().iter().enumerate() {
                if kappa % pow(orbits.p, ij) == 0 {
                    c += if j % 2 == 0 { 1 } else { -1 };
                }
            }
            if kappa % pow(orbits.p, i) == 0 {
                c += top_sign;
            }
            c
        })
        .collect();
    if let Some(bad) = coords.iter().find(|&&c| c != 0 && c != 1) {
        return Err(CharacterError::Consistency(format!("Xi coordinate {bad} outside {{0,1}} for W = {w}, i = {i}")));
    }
    Ok(coords)
}

/// `|Ξ(W,i)| = (ℓ_i p^(n-i) - d_0)/e`, or an error if that is not an integer.
pub fn xi_count(w: &EndoPermParams, g: &CyclicGroup, e: u64, i: u32) -> Result<u64, CharacterError> {
    let big_l = local::u_module_dimension(w, g, i)?;
    let (_, d0) = t_and_d0(w, g, i)?;
    let numerator = big_l - d0 as u64;
    if !numerator.is_multiple_of(e) {
        return Err(CharacterError::Consistency(format!(
            "(l_i p^(n-i) - d0)/e = {numerator}/{e} is not integral for W = {w}, i = {i}"
        )));
    }
    Ok(numerator / e)
}

/// `Ξ(W,i)` as a block character with zero non-exceptional part.
pub fn xi(block: &Block, i: u32) -> Result<BlockCharacter, CharacterError> {
    let orbits = check_vertex(block, i)?;
    let coords = xi_coordinates(block.w(), orbits, i)?;
    let expected = xi_count(block.w(), block.group(), block.e(), i)?;
    let actual = coords.iter().sum::<i64>() as u64;
    if actual != expected {
        return Err(CharacterError::Consistency(format!(
            "Xi has {actual} constituents, expected {expected} for W = {}, i = {i}",
            block.w()
        )));
    }
    Ok(block.zero_character().with_exceptional(coords))
}

/// `χ_Λ - Ξ(W,i)`.
pub fn xi_complement(block: &Block, i: u32) -> Result<BlockCharacter, CharacterError> {
    Ok(omega_twist(&xi(block, i)?, 1))
}

/// The overlined sum exactly as printed, with `p^j ∤ κ(r)` in place of
/// `p^j | κ(r)`. It agrees with [`xi_complement`] only when `t(i)` is odd.
pub fn xi_overline_literal(block: &Block, i: u32) -> Result<BlockCharacter, CharacterError> {
    let orbits = check_vertex(block, i)?;
    let below = local::restricted_cap_params(block.w(), block.group(), i)?;
    let top_sign = if below.indices().len() % 2 == 0 { 1 } else { -1 };
    let p = block.p();
    let coords = orbits
        .representatives
        .iter()
        .map(|&kappa| {
            let mut c = 0;
            for (j, &ij) in below.indices().iter().enumerate() {
                if kappa % pow(p, ij) != 0 {
                    c += if j % 2 == 0 { 1 } else { -1 };
                }
            }
            if kappa % pow(p, i) != 0 {
                c += top_sign;
            }
            c
        })
        .collect();
    Ok(block.zero_character().with_exceptional(coords))
}

/// Exceptional part of `Ω^steps(M)` given that of `M`.
pub fn omega_twist(xi_part: &BlockCharacter, steps: i64) -> BlockCharacter {
    if steps.rem_euclid(2) == 0 {
        return xi_part.clone();
    }
    xi_part.with_exceptional(xi_part.exceptional.iter().map(|&c| 1 - c).collect())
}

/// Character of the trivial source lift of the module described by `path`,
/// which must carry an admission from the enumeration at vertex `D_i`.
pub fn character_of(block: &Block, i: u32, path: &PathDescriptor) -> Result<BlockCharacter, CharacterError> {
    let admission =
        path.admission.as_ref().ok_or_else(|| CharacterError::Consistency("path carries no admission".into()))?;
    if admission.case == CaseTag::Hook {
        let v =
            *path.spine_vertices.first().ok_or_else(|| CharacterError::Consistency("hook without vertex".into()))?;
        return Ok(block.vertex_character(v));
    }
    let exceptional = match admission.case {
        CaseTag::AI | CaseTag::II | CaseTag::III => xi(block, i)?,
        CaseTag::AII | CaseTag::I | CaseTag::IV => xi_complement(block, i)?,
        CaseTag::Hook => unreachable!(),
    };
    let psi = path.spine_vertices.iter().fold(block.zero_character(), |acc, &v| &acc + &block.vertex_character(v));
    let chi = &psi + &exceptional;
    if !chi.is_zero_one() {
        return Err(CharacterError::Consistency(format!("character {chi:?} has a coordinate outside {{0,1}}")));
    }
    Ok(chi)
}

/// The nilpotent-level character over `ψ_(λ_κ)`: the Morita correspondent's
/// multiplicities, whose `λ_0` coordinate must be `d_0`.
pub fn nilpotent_level_character(
    w: &EndoPermParams,
    g: &CyclicGroup,
    i: u32,
) -> Result<CyclicCharacter, CharacterError> {
    let chi = local::morita_correspondent_character(w, g, i)?;
    let (_, d0) = t_and_d0(w, g, i)?;
    if chi.get(0) != d0 {
        return Err(CharacterError::Consistency(format!(
            "lambda_0 coordinate {} differs from d0 = {d0} for W = {w}, i = {i}",
            chi.get(0)
        )));
    }
    Ok(chi)
}

/// Character of the `x`-th (`1 ≤ x ≤ e`) trivial source module with vertex
/// `D_i` of a star-shaped block: `d_0 θ_x + Ξ(W,i)`.
pub fn b_level_character(star: &Block, i: u32, x: usize) -> Result<BlockCharacter, CharacterError> {
    let centre = star.exceptional_vertex().ok_or(CharacterError::NoExceptional)?;
    if star.degree(centre) != star.edge_count() {
        return Err(CharacterError::Consistency("descriptor is not a star with exceptional centre".into()));
    }
    if x == 0 || x > star.edge_count() {
        return Err(CharacterError::Consistency(format!("leaf index {x} outside [1, {}]", star.edge_count())));
    }
    let (_, d0) = t_and_d0(star.w(), star.group(), i)?;
    let mut chi = xi(star, i)?;
    chi.nonexceptional[x - 1] = d0;
    Ok(chi)
}
