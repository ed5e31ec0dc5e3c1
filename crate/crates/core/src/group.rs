//! Compressions, the Rickart mapping and spectral resolutions on the unital
//! lattice group `ℤ^X` with coordinatewise order.
//!
//! Projections are the elements of `[0, u]` whose coordinates are `0` or
//! `u_i`; they are stored as bit masks over `X` (bit `i` is coordinate `i`).

use crate::budget::Budget;
use crate::comparability::check_b_comparability;
use crate::compbase::FiniteBase;
use crate::error::{Error, Result};
use crate::report::{Report, ScanMode};
use num_rational::Ratio;
use num_traits::{One, Signed};
use rand::Rng;

pub type Mask = u64;
type Q = Ratio<i64>;

/// Largest `|X|` for brute-force checks over all projections.
pub const BRUTE_DIM: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitalGroup {
    unit: Vec<i64>,
}

/// `g = g₊ - g₋` with `p` the support of `g₊`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub plus: Vec<i64>,
    pub minus: Vec<i64>,
    pub p: Mask,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Approximation {
    /// `u_1, …, u_N`.
    pub parts: Vec<Mask>,
    /// `max_i (m_i - m_{i-1})`.
    pub bound: i64,
    /// `‖n g - Σ m_i u_i‖`.
    pub error: Q,
}

impl UnitalGroup {
    pub fn new(unit: Vec<i64>) -> Result<Self> {
        if unit.is_empty() || unit.len() > 63 {
            return Err(Error::InvalidParameter(format!("|X| = {} must be in 1..=63", unit.len())));
        }
        if let Some(x) = unit.iter().find(|&&x| x < 1) {
            return Err(Error::InvalidParameter(format!("unit coordinate {x} is not positive")));
        }
        Ok(UnitalGroup { unit })
    }

    pub fn unit(&self) -> &[i64] {
        &self.unit
    }

    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn full(&self) -> Mask {
        (1 << self.dim()) - 1
    }

    fn check(&self, g: &[i64]) -> Result<()> {
        if g.len() != self.dim() {
            return Err(Error::DomainMismatch(format!("{} coordinates, |X| = {}", g.len(), self.dim())));
        }
        Ok(())
    }

    /// The projection as a group element.
    pub fn vector(&self, p: Mask) -> Vec<i64> {
        (0..self.dim())
            .map(|i| if p >> i & 1 == 1 { self.unit[i] } else { 0 })
            .collect()
    }

    pub fn mask_of(&self, p: &[i64]) -> Option<Mask> {
        if p.len() != self.dim() {
            return None;
        }
        let mut m = 0;
        for (i, (&x, &u)) in p.iter().zip(&self.unit).enumerate() {
            if x == u {
                m |= 1 << i;
            } else if x != 0 {
                return None;
            }
        }
        Some(m)
    }

    pub fn ortho(&self, p: Mask) -> Mask {
        self.full() & !p
    }

    /// `J_p(g)`: masks coordinates outside `p`.
    pub fn compress(&self, p: Mask, g: &[i64]) -> Vec<i64> {
        g.iter()
            .enumerate()
            .map(|(i, &x)| if p >> i & 1 == 1 { x } else { 0 })
            .collect()
    }

    pub fn orthogonal_decomposition(&self, g: &[i64]) -> Result<Decomposition> {
        self.check(g)?;
        let plus: Vec<i64> = g.iter().map(|&x| x.max(0)).collect();
        let minus: Vec<i64> = g.iter().map(|&x| (-x).max(0)).collect();
        let p = mask_where(g, |x| x > 0);
        Ok(Decomposition { plus, minus, p })
    }

    /// `g*`, the zero set of `g`, checked against
    /// `p ≤ g* ⟺ J_p(g) = 0` over every projection when `|X|` is small.
    pub fn rickart(&self, g: &[i64]) -> Result<Mask> {
        self.check(g)?;
        let star = mask_where(g, |x| x == 0);
        if self.dim() <= BRUTE_DIM {
            for p in 0..=self.full() {
                let below = p & !star == 0;
                let kills = self.compress(p, g).iter().all(|&x| x == 0);
                if below != kills {
                    return Err(Error::Inconsistent(format!("Rickart biconditional fails at {p:b}")));
                }
            }
        }
        Ok(star)
    }

    fn spectral_raw(&self, g: &[i64], m: i64, n: i64) -> Mask {
        let h: Vec<i64> = g.iter().zip(&self.unit).map(|(&x, &u)| n * x - m * u).collect();
        mask_where(&h, |x| x <= 0)
    }

    /// `p_{g, m/n} = ((n g - m u)₊)*`, checked against the `2m/2n`
    /// representation.
    pub fn group_spectral(&self, g: &[i64], m: i64, n: i64) -> Result<Mask> {
        self.check(g)?;
        if n <= 0 {
            return Err(Error::InvalidParameter(format!("denominator {n} must be positive")));
        }
        let h: Vec<i64> = g.iter().zip(&self.unit).map(|(&x, &u)| n * x - m * u).collect();
        let d = self.orthogonal_decomposition(&h)?;
        let p = self.rickart(&d.plus)?;
        if self.spectral_raw(g, 2 * m, 2 * n) != p {
            return Err(Error::Inconsistent(format!("p_(g,{m}/{n}) depends on the representation")));
        }
        Ok(p)
    }

    pub fn spectral_at(&self, g: &[i64], lambda: Q) -> Result<Mask> {
        self.group_spectral(g, *lambda.numer(), *lambda.denom())
    }

    /// `(l_g, u_g)`.
    pub fn bounds(&self, g: &[i64]) -> Result<(Q, Q)> {
        self.check(g)?;
        let r = self.ratios(g);
        Ok((*r.iter().min().expect("nonempty"), *r.iter().max().expect("nonempty")))
    }

    fn ratios(&self, g: &[i64]) -> Vec<Q> {
        g.iter().zip(&self.unit).map(|(&x, &u)| Q::new(x, u)).collect()
    }

    /// `‖g‖ = max_i |g_i| / u_i`.
    pub fn norm(&self, g: &[i64]) -> Result<Q> {
        self.check(g)?;
        Ok(self.ratios(g).into_iter().map(|r| r.abs()).max().expect("nonempty"))
    }

    /// `min_{1≤k≤k_max} n_k / k` with `n_k` least such that `-n u ≤ k g ≤ n u`.
    pub fn norm_by_definition(&self, g: &[i64], k_max: i64) -> Result<Q> {
        self.check(g)?;
        (1..=k_max)
            .map(|k| {
                let n = g
                    .iter()
                    .zip(&self.unit)
                    .map(|(&x, &u)| (k * x.abs() + u - 1).div_euclid(u))
                    .max()
                    .expect("nonempty");
                Q::new(n, k)
            })
            .min()
            .ok_or_else(|| Error::InvalidParameter("k_max must be positive".into()))
    }

    /// `P_±(g)`: projections `p` with `J_p(g) ≥ 0` and `J_{p'}(g) ≤ 0`.
    pub fn p_plus_minus(&self, g: &[i64]) -> Result<Vec<Mask>> {
        self.check(g)?;
        if self.dim() > BRUTE_DIM {
            return Err(Error::SizeLimit(format!("|X| = {} for a projection scan", self.dim())));
        }
        Ok((0..=self.full())
            .filter(|&p| {
                let po = self.ortho(p);
                self.compress(p, g).iter().all(|&x| x >= 0) && self.compress(po, g).iter().all(|&x| x <= 0)
            })
            .collect())
    }

    /// Partition of `u` approximating `n g` on the grid `m_0 ≤ … ≤ m_N`.
    pub fn dyadic_approximation(&self, g: &[i64], grid: &[i64], n: i64) -> Result<Approximation> {
        self.check(g)?;
        if n <= 0 || grid.len() < 2 {
            return Err(Error::InvalidParameter("need n > 0 and at least two grid points".into()));
        }
        if grid.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter("grid must be nondecreasing".into()));
        }
        let reach = self.norm(g)? * Q::from_integer(n);
        let (first, last) = (grid[0], *grid.last().expect("nonempty"));
        if Q::from_integer(first) > -reach || Q::from_integer(last) < reach {
            return Err(Error::GridTooNarrow(format!(
                "grid [{first}, {last}] does not cover ±n‖g‖ = ±{reach}"
            )));
        }
        let mut q = self.full();
        let mut parts = Vec::with_capacity(grid.len() - 1);
        for &m in &grid[1..] {
            let h: Vec<i64> = g.iter().zip(&self.unit).map(|(&x, &u)| n * x - m * u).collect();
            let r = self.orthogonal_decomposition(&h)?.p;
            let next = r & q;
            parts.push(q & !next);
            q = next;
        }
        if q != 0 {
            return Err(Error::Inconsistent("parts do not exhaust u".into()));
        }
        let mut residual: Vec<i64> = g.iter().map(|&x| n * x).collect();
        for (&m, &p) in grid[1..].iter().zip(&parts) {
            for (i, r) in residual.iter_mut().enumerate() {
                if p >> i & 1 == 1 {
                    *r -= m * self.unit[i];
                }
            }
        }
        let bound = grid.windows(2).map(|w| w[1] - w[0]).max().expect("two points");
        Ok(Approximation {
            parts,
            bound,
            error: self.norm(&residual)?,
        })
    }

    /// The four clauses of the characterization of `{p_{g,λ}}` on the given
    /// rationals.
    pub fn resolution_report(&self, g: &[i64], lambdas: &[Q]) -> Result<Report> {
        let (lg, ug) = self.bounds(g)?;
        let mut lambdas = lambdas.to_vec();
        lambdas.sort();
        lambdas.dedup();
        let breaks = {
            let mut r = self.ratios(g);
            r.sort();
            r
        };
        let fam: Vec<Mask> = lambdas.iter().map(|&l| self.spectral_at(g, l)).collect::<Result<_>>()?;
        let mode = ScanMode::Exhaustive;
        let mut report = Report::new(format!("group resolution of {g:?}"));

        let w1 = lambdas.iter().zip(&fam).find_map(|(&l, &p)| {
            if l < lg && p != 0 {
                Some(format!("λ = {l} < l_g but p ≠ 0"))
            } else if l >= ug && p != self.full() {
                Some(format!("λ = {l} ≥ u_g but p ≠ u"))
            } else {
                None
            }
        });
        report.push("(i) p = 0 below l_g, p = u from u_g", mode, w1);

        let w2 = fam
            .windows(2)
            .zip(lambdas.windows(2))
            .find(|(p, _)| p[0] & !p[1] != 0)
            .map(|(_, l)| format!("p_{} ≰ p_{}", l[0], l[1]));
        report.push("(ii) monotone", mode, w2);

        let mut w3 = None;
        for (&l, &p) in lambdas.iter().zip(&fam) {
            let next = breaks.iter().find(|&&b| b > l).copied().unwrap_or(l + Q::one() + Q::one());
            let mid = (l + next) / Q::from_integer(2);
            if self.spectral_at(g, mid)? != p {
                w3 = Some(format!("p_{l} ≠ p_{mid}"));
                break;
            }
        }
        report.push("(iii) right-continuous", mode, w3);

        let w4 = lambdas.iter().zip(&fam).find_map(|(&l, &p)| {
            let (m, n) = (*l.numer(), *l.denom());
            let ok = (0..self.dim()).all(|i| {
                let (x, u) = (g[i], self.unit[i]);
                if p >> i & 1 == 1 {
                    n * x <= m * u
                } else {
                    m * u <= n * x
                }
            });
            (!ok).then(|| format!("n J_p(g) ≤ m p or m p' ≤ n J_p'(g) fails at λ = {l}"))
        });
        report.push("(iv) n J_p(g) ≤ m p and m p' ≤ n J_p'(g)", mode, w4);
        Ok(report)
    }
}

fn mask_where(g: &[i64], f: impl Fn(i64) -> bool) -> Mask {
    g.iter()
        .enumerate()
        .filter(|(_, &x)| f(x))
        .fold(0, |m, (i, _)| m | 1 << i)
}

/// b-comparability in `E` against general comparability of its universal
/// group on `[-2u, 2u]`.
pub fn check_comparability_equivalence(cb: &FiniteBase, budget: &Budget) -> Result<Report> {
    let alg = cb.algebra();
    let unit = alg
        .group_unit()
        .ok_or_else(|| Error::InvalidParameter(format!("{} has no ℤ^X universal group", cb.name())))?;
    let group = UnitalGroup::new(unit.clone())?;
    let lhs = check_b_comparability(cb, budget);
    let b_ok = lhs.passed();
    let mut report = Report::new(format!("comparability equivalence: {}", cb.name()));
    report.absorb("E/", lhs);

    let span: u64 = unit.iter().map(|&u| 4 * u as u64 + 1).product();
    let missing = |g: &[i64]| -> Result<Option<String>> {
        Ok(group.p_plus_minus(g)?.is_empty().then(|| format!("P_±({g:?}) is empty")))
    };
    let (mode, mut witness) = if budget.allows(span << group.dim(), alg.size()) {
        let mut w = None;
        let mut g: Vec<i64> = unit.iter().map(|&u| -2 * u).collect();
        'scan: loop {
            if let Some(m) = missing(&g)? {
                w = Some(m);
                break;
            }
            for i in 0..g.len() {
                if g[i] < 2 * unit[i] {
                    g[i] += 1;
                    continue 'scan;
                }
                g[i] = -2 * unit[i];
            }
            break;
        }
        (ScanMode::Exhaustive, w)
    } else {
        let mut rng = budget.rng(0x6c);
        let mut w = None;
        for _ in 0..budget.samples {
            let g: Vec<i64> = unit.iter().map(|&u| rng.random_range(-2 * u..=2 * u)).collect();
            if let Some(m) = missing(&g)? {
                w = Some(m);
                break;
            }
        }
        (ScanMode::Sampled(budget.samples), w)
    };
    let g_ok = witness.is_none();
    report.push("general comparability in G", mode, witness.take());
    report.push(
        "b-comparability in E iff general comparability in G",
        mode,
        (b_ok != g_ok).then(|| format!("E: {b_ok}, G: {g_ok}")),
    );
    Ok(report)
}

/// `q ≤ p` for masks.
pub fn below(q: Mask, p: Mask) -> bool {
    q & !p == 0
}
