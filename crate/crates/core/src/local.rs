//! Modules and characters over the cyclic defect group `D = C_(p^n)`.
//!
//! `D_i` is the subgroup of order `p^i`. `M_r` is the indecomposable
//! `kD`-module of dimension `r`. Capped endo-permutation modules are written
//! `W = Ω_(D/D_(i_0)) ∘ … ∘ Ω_(D/D_(i_s))(k)` with `i_0 < … < i_s`, and
//! characters of their determinant-one lifts are multiplicity vectors over
//! `λ_0, …, λ_(p^n - 1)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{is_prime, pow};
pub use crate::cyclotomic::CyclicCharacter;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalError {
    #[error("p = {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("defect n must be at least 1")]
    ZeroDefect,
    #[error("index list {0:?} is not strictly increasing")]
    NotStrictlyIncreasing(Vec<u32>),
    #[error("index {index} is outside [{min}, {max}]")]
    IndexOutOfRange { index: u32, min: u32, max: u32 },
    #[error("subgroup index {i} is outside [{min}, {max}]")]
    SubgroupOutOfRange { i: u32, min: u32, max: u32 },
    #[error("dimension {r} is outside [1, {max}]")]
    DimensionOutOfRange { r: u64, max: u64 },
    #[error("character has {actual} entries, expected {expected}")]
    OrderMismatch { expected: usize, actual: usize },
    #[error("invalid index list {0:?}")]
    Parse(String),
}

/// The cyclic `p`-group `C_(p^n)` together with its subgroup chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicGroup {
    p: u64,
    n: u32,
}

impl CyclicGroup {
    pub fn new(p: u64, n: u32) -> Result<Self, LocalError> {
        if p == 2 || !is_prime(p) {
            return Err(LocalError::NotOddPrime(p));
        }
        if n == 0 {
            return Err(LocalError::ZeroDefect);
        }
        Ok(CyclicGroup { p, n })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u64 {
        pow(self.p, self.n)
    }

    /// `|D_i| = p^i`.
    pub fn subgroup_order(&self, i: u32) -> u64 {
        pow(self.p, i)
    }

    /// `|D/D_i| = p^(n-i)`.
    pub fn index_of(&self, i: u32) -> u64 {
        pow(self.p, self.n - i)
    }

    /// `D_i` as a group in its own right.
    pub fn subgroup(&self, i: u32) -> Result<CyclicGroup, LocalError> {
        check_range(i, 1, self.n)?;
        Ok(CyclicGroup { p: self.p, n: i })
    }
}

fn check_range(i: u32, min: u32, max: u32) -> Result<(), LocalError> {
    if i < min || i > max {
        return Err(LocalError::SubgroupOutOfRange { i, min, max });
    }
    Ok(())
}

/// `M_r`, the uniserial `kD`-module of dimension `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IndecomposableModule {
    pub group: CyclicGroup,
    pub dim: u64,
}

impl IndecomposableModule {
    pub fn new(group: CyclicGroup, dim: u64) -> Result<Self, LocalError> {
        if dim == 0 || dim > group.order() {
            return Err(LocalError::DimensionOutOfRange { r: dim, max: group.order() });
        }
        Ok(IndecomposableModule { group, dim })
    }
}

/// Index list `i_0 < i_1 < … < i_s` of a capped endo-permutation module; empty
/// for the trivial module `k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "EndoPermParamsRepr", into = "EndoPermParamsRepr")]
pub struct EndoPermParams {
    indices: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct EndoPermParamsRepr {
    indices: Vec<u32>,
}

impl TryFrom<EndoPermParamsRepr> for EndoPermParams {
    type Error = LocalError;

    fn try_from(repr: EndoPermParamsRepr) -> Result<Self, LocalError> {
        EndoPermParams::new(repr.indices)
    }
}

impl From<EndoPermParams> for EndoPermParamsRepr {
    fn from(w: EndoPermParams) -> Self {
        EndoPermParamsRepr { indices: w.indices }
    }
}

impl EndoPermParams {
    /// Accepts only strictly increasing lists; nothing is normalized.
    pub fn new(indices: Vec<u32>) -> Result<Self, LocalError> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LocalError::NotStrictlyIncreasing(indices));
        }
        Ok(EndoPermParams { indices })
    }

    /// The trivial module `k`.
    pub fn trivial() -> Self {
        EndoPermParams::default()
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn is_trivial(&self) -> bool {
        self.indices.is_empty()
    }

    /// `s`, with `-1` for `k`.
    pub fn s(&self) -> i32 {
        self.indices.len() as i32 - 1
    }

    /// Every index lies in `[0, n-1]`.
    pub fn check_general(&self, g: &CyclicGroup) -> Result<(), LocalError> {
        self.check_bounds(0, g.n() - 1)
    }

    /// Every index lies in `[1, n-1]`, as for the parameter of a block.
    pub fn check_block(&self, g: &CyclicGroup) -> Result<(), LocalError> {
        self.check_bounds(1, g.n() - 1)
    }

    fn check_bounds(&self, min: u32, max: u32) -> Result<(), LocalError> {
        match self.indices.iter().find(|&&i| i < min || i > max) {
            Some(&index) => Err(LocalError::IndexOutOfRange { index, min, max }),
            None => Ok(()),
        }
    }
}

impl FromStr for EndoPermParams {
    type Err = LocalError;

    /// Comma-separated indices; the empty string is `k`.
    fn from_str(s: &str) -> Result<Self, LocalError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(EndoPermParams::trivial());
        }
        let indices = s
            .split(',')
            .map(|part| part.trim().parse::<u32>().map_err(|_| LocalError::Parse(s.to_owned())))
            .collect::<Result<Vec<_>, _>>()?;
        EndoPermParams::new(indices)
    }
}

impl fmt::Display for EndoPermParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.indices.is_empty() {
            return write!(f, "k");
        }
        let parts: Vec<String> = self.indices.iter().map(u32::to_string).collect();
        write!(f, "W({})", parts.join("<"))
    }
}

/// `Ω_(D/D_i)(M_r) = M_(p^(n-i) - r)`.
pub fn heller_relative(g: &CyclicGroup, i: u32, r: u64) -> Result<IndecomposableModule, LocalError> {
    if i >= g.n() {
        return Err(LocalError::SubgroupOutOfRange { i, min: 0, max: g.n() - 1 });
    }
    let quotient = g.index_of(i);
    if r == 0 || r >= quotient {
        return Err(LocalError::DimensionOutOfRange { r, max: quotient - 1 });
    }
    IndecomposableModule::new(*g, quotient - r)
}

/// Character of the permutation lattice `O[D/D_i]`: `Σ_(p^i | κ) λ_κ`.
pub fn perm_module_character(g: &CyclicGroup, i: u32) -> Result<CyclicCharacter, LocalError> {
    check_range(i, 0, g.n())?;
    let step = g.subgroup_order(i) as usize;
    Ok(CyclicCharacter::indicator(g.order() as usize, |k| k % step == 0))
}

/// Indices of `W` strictly below `i`: the parameters of `Cap(Res^D_(D_i)(W))`.
pub fn restricted_cap_params(params: &EndoPermParams, g: &CyclicGroup, i: u32) -> Result<EndoPermParams, LocalError> {
    check_range(i, 1, g.n())?;
    Ok(EndoPermParams { indices: params.indices.iter().copied().filter(|&x| x < i).collect() })
}

/// `t(i)`: last position `j` with `i_j ≤ i - 1`, or `-1`.
pub fn t_index(params: &EndoPermParams, g: &CyclicGroup, i: u32) -> Result<i32, LocalError> {
    Ok(restricted_cap_params(params, g, i)?.s())
}

/// `ℓ_i = Σ_(i_j < i) (-1)^j p^(i - i_j) + (-1)^#{j : i_j < i}`.
pub fn cap_dim(params: &EndoPermParams, g: &CyclicGroup, i: u32) -> Result<u64, LocalError> {
    check_range(i, 1, g.n())?;
    let below: Vec<u32> = params.indices.iter().copied().filter(|&x| x < i).collect();
    let mut total: i128 = 0;
    for (j, &ij) in below.iter().enumerate() {
        let term = i128::from(pow(g.p(), i - ij));
        total += if j % 2 == 0 { term } else { -term };
    }
    total += if below.len().is_multiple_of(2) { 1 } else { -1 };
    Ok(u64::try_from(total).expect("cap dimension is positive"))
}

/// `dim Ω_(D_i/D_(i_0)) ∘ … ∘ Ω_(D_i/D_(i_t))(k)`, one relative Heller step at a time.
pub fn cap_dim_recursive(params: &EndoPermParams, g: &CyclicGroup, i: u32) -> Result<u64, LocalError> {
    let restricted = restricted_cap_params(params, g, i)?;
    let sub = g.subgroup(i)?;
    let mut dim = 1;
    for &ij in restricted.indices.iter().rev() {
        dim = heller_relative(&sub, ij, dim)?.dim;
    }
    Ok(dim)
}

/// Character of the determinant-one lift of `W`:
/// `Σ_j (-1)^j Σ_(p^(i_j) | κ) λ_κ + (-1)^(s+1) λ_0`.
pub fn char_det1_endoperm(params: &EndoPermParams, g: &CyclicGroup) -> Result<CyclicCharacter, LocalError> {
    params.check_general(g)?;
    let order = g.order() as usize;
    let mut chi = CyclicCharacter::zero(order);
    for (j, &ij) in params.indices.iter().enumerate() {
        let term = perm_module_character(g, ij)?;
        chi = if j % 2 == 0 { &chi + &term } else { &chi - &term };
    }
    let trivial = CyclicCharacter::lambda(order, 0);
    Ok(if params.indices.len().is_multiple_of(2) { &chi + &trivial } else { &chi - &trivial })
}

/// `Ind_(D_i)^D`: `λ^(D_i)_ν ↦ Σ_(κ ≡ ν mod p^i) λ^D_κ`.
pub fn induce_character(g: &CyclicGroup, i: u32, chi: &CyclicCharacter) -> Result<CyclicCharacter, LocalError> {
    check_range(i, 0, g.n())?;
    let sub_order = g.subgroup_order(i) as usize;
    if chi.order() != sub_order {
        return Err(LocalError::OrderMismatch { expected: sub_order, actual: chi.order() });
    }
    let mults = (0..g.order() as usize).map(|kappa| chi.get(kappa % sub_order)).collect();
    Ok(CyclicCharacter::from_mults(mults))
}

/// Character of `U_(D_i)(W) = Ind_(D_i)^D ∘ Cap ∘ Res^D_(D_i)(W)`, the Morita
/// correspondent in `kD` of the trivial source module with vertex `D_i`:
/// `Σ_(j ≤ t(i)) (-1)^j Σ_(p^(i_j) | κ) λ_κ + (-1)^(t(i)+1) Σ_(p^i | κ) λ_κ`.
pub fn morita_correspondent_character(
    params: &EndoPermParams,
    g: &CyclicGroup,
    i: u32,
) -> Result<CyclicCharacter, LocalError> {
    let restricted = restricted_cap_params(params, g, i)?;
    let mut chi = CyclicCharacter::zero(g.order() as usize);
    for (j, &ij) in restricted.indices.iter().enumerate() {
        let term = perm_module_character(g, ij)?;
        chi = if j % 2 == 0 { &chi + &term } else { &chi - &term };
    }
    let top = perm_module_character(g, i)?;
    Ok(if restricted.indices.len() % 2 == 0 { &chi + &top } else { &chi - &top })
}

/// `dim U_(D_i)(W) = ℓ_i · p^(n-i)`.
pub fn u_module_dimension(params: &EndoPermParams, g: &CyclicGroup, i: u32) -> Result<u64, LocalError> {
    Ok(cap_dim(params, g, i)? * g.index_of(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(p: u64, n: u32) -> CyclicGroup {
        CyclicGroup::new(p, n).unwrap()
    }

    fn w(indices: &[u32]) -> EndoPermParams {
        EndoPermParams::new(indices.to_vec()).unwrap()
    }

    fn support(chi: &CyclicCharacter) -> Vec<usize> {
        chi.support()
    }

    #[test]
    fn group_validation() {
        assert_eq!(CyclicGroup::new(2, 1), Err(LocalError::NotOddPrime(2)));
        assert_eq!(CyclicGroup::new(9, 1), Err(LocalError::NotOddPrime(9)));
        assert_eq!(CyclicGroup::new(3, 0), Err(LocalError::ZeroDefect));
    }

    #[test]
    fn heller_examples() {
        assert_eq!(heller_relative(&g(3, 2), 0, 1).unwrap().dim, 8);
        assert_eq!(heller_relative(&g(3, 2), 1, 1).unwrap().dim, 2);
        assert_eq!(heller_relative(&g(5, 1), 0, 3).unwrap().dim, 2);
        assert!(matches!(heller_relative(&g(3, 2), 1, 3), Err(LocalError::DimensionOutOfRange { .. })));
        assert!(matches!(heller_relative(&g(3, 2), 0, 0), Err(LocalError::DimensionOutOfRange { .. })));
        assert!(matches!(heller_relative(&g(3, 2), 2, 1), Err(LocalError::SubgroupOutOfRange { .. })));
    }

    #[test]
    fn heller_twice_is_identity() {
        let d = g(5, 2);
        for r in 1..25 {
            let once = heller_relative(&d, 0, r).unwrap();
            assert_eq!(heller_relative(&d, 0, once.dim).unwrap().dim, r);
        }
    }

    #[test]
    fn perm_characters() {
        assert_eq!(perm_module_character(&g(3, 2), 0).unwrap().mults(), &[1; 9]);
        assert_eq!(support(&perm_module_character(&g(3, 2), 1).unwrap()), vec![0, 3, 6]);
        assert_eq!(support(&perm_module_character(&g(3, 2), 2).unwrap()), vec![0]);
        assert!(perm_module_character(&g(3, 2), 3).is_err());
    }

    #[test]
    fn cap_dim_examples() {
        for i in 1..=3 {
            assert_eq!(cap_dim(&EndoPermParams::trivial(), &g(5, 3), i).unwrap(), 1);
        }
        assert_eq!(cap_dim(&w(&[1]), &g(3, 2), 2).unwrap(), 2);
        assert_eq!(cap_dim(&w(&[1, 2]), &g(3, 3), 3).unwrap(), 7);
        assert_eq!(cap_dim_recursive(&EndoPermParams::trivial(), &g(3, 2), 2).unwrap(), 1);
        assert_eq!(cap_dim_recursive(&w(&[1]), &g(3, 2), 2).unwrap(), 2);
        assert_eq!(cap_dim_recursive(&w(&[1]), &g(5, 2), 1).unwrap(), 1);
        assert_eq!(cap_dim_recursive(&w(&[1, 2]), &g(3, 3), 3).unwrap(), 7);
    }

    #[test]
    fn restricted_params() {
        let d = g(3, 5);
        let r = restricted_cap_params(&w(&[1, 3, 4]), &d, 2).unwrap();
        assert_eq!(r.indices(), &[1]);
        assert_eq!(t_index(&w(&[1, 3, 4]), &d, 2).unwrap(), 0);
        assert_eq!(t_index(&EndoPermParams::trivial(), &d, 3).unwrap(), -1);
        let r = restricted_cap_params(&w(&[1, 2, 4]), &d, 4).unwrap();
        assert_eq!(r.indices(), &[1, 2]);
        assert_eq!(r.s(), 1);
    }

    #[test]
    fn det1_examples() {
        let d = g(3, 2);
        assert_eq!(char_det1_endoperm(&EndoPermParams::trivial(), &d).unwrap(), CyclicCharacter::lambda(9, 0));
        assert_eq!(support(&char_det1_endoperm(&w(&[1]), &d).unwrap()), vec![3, 6]);
        let chi = char_det1_endoperm(&w(&[0, 1]), &d).unwrap();
        assert_eq!(support(&chi), vec![0, 1, 2, 4, 5, 7, 8]);
        assert_eq!(chi.degree(), 7);
        assert!(chi.is_zero_one());
    }

    #[test]
    fn induction_examples() {
        let d = g(3, 2);
        let trivial = CyclicCharacter::lambda(3, 0);
        assert_eq!(induce_character(&d, 1, &trivial).unwrap(), perm_module_character(&d, 1).unwrap());
        assert_eq!(support(&induce_character(&d, 1, &CyclicCharacter::lambda(3, 1)).unwrap()), vec![1, 4, 7]);
        let chi = CyclicCharacter::from_mults(vec![1, 0, 2, 0, 0, 0, 0, 0, -1]);
        assert_eq!(induce_character(&d, 2, &chi).unwrap(), chi);
        assert!(matches!(induce_character(&d, 2, &trivial), Err(LocalError::OrderMismatch { .. })));
    }

    #[test]
    fn morita_examples() {
        let d = g(3, 2);
        assert_eq!(support(&morita_correspondent_character(&EndoPermParams::trivial(), &d, 1).unwrap()), vec![0, 3, 6]);
        let chi = morita_correspondent_character(&w(&[1]), &d, 2).unwrap();
        assert_eq!(support(&chi), vec![3, 6]);
        assert_eq!(chi.degree(), 2);
        let chi = morita_correspondent_character(&w(&[1]), &d, 1).unwrap();
        assert_eq!(support(&chi), vec![0, 3, 6]);
        assert_eq!(chi.degree() as u64, cap_dim(&w(&[1]), &d, 1).unwrap() * 3);
    }

    #[test]
    fn u_dimensions() {
        assert_eq!(u_module_dimension(&EndoPermParams::trivial(), &g(3, 2), 1).unwrap(), 3);
        assert_eq!(u_module_dimension(&w(&[1]), &g(3, 2), 2).unwrap(), 2);
        assert_eq!(u_module_dimension(&w(&[1, 2]), &g(3, 3), 3).unwrap(), 7);
    }

    #[test]
    fn params_parse_and_reject() {
        assert_eq!("".parse::<EndoPermParams>().unwrap(), EndoPermParams::trivial());
        assert_eq!("1, 2".parse::<EndoPermParams>().unwrap(), w(&[1, 2]));
        assert!(matches!("2,1".parse::<EndoPermParams>(), Err(LocalError::NotStrictlyIncreasing(_))));
        assert!(matches!("1,1".parse::<EndoPermParams>(), Err(LocalError::NotStrictlyIncreasing(_))));
        assert!(matches!("1,x".parse::<EndoPermParams>(), Err(LocalError::Parse(_))));
        assert!(w(&[0, 1]).check_general(&g(3, 2)).is_ok());
        assert!(w(&[0, 1]).check_block(&g(3, 2)).is_err());
        assert!(w(&[2]).check_general(&g(3, 2)).is_err());
        let parsed: Result<EndoPermParams, _> = serde_json::from_str(r#"{"indices":[3,1]}"#);
        assert!(parsed.is_err());
        assert_eq!(w(&[1, 2]).to_string(), "W(1<2)");
    }
}
