use super::FiniteBase;
use crate::algebra::EffectAlgebra;
use crate::error::{Error, Result};

const MAX_PROJECTIONS: usize = 1024;

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn full(n: usize) -> Self {
        let mut b = Self::empty(n);
        for i in 0..n {
            b.insert(i);
        }
        b
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn and_not(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & !b).collect())
    }
    fn or(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a | b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b)
        })
    }
}

fn bron_kerbosch(r: &mut Vec<usize>, p: Bits, mut x: Bits, adj: &[Bits], out: &mut Vec<Vec<usize>>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p
        .or(&x)
        .iter()
        .max_by_key(|&u| p.and(&adj[u]).count())
        .expect("nonempty candidate set");
    let mut p = p;
    for v in p.and_not(&adj[pivot]).iter().collect::<Vec<_>>() {
        r.push(v);
        bron_kerbosch(r, p.and(&adj[v]), x.and(&adj[v]), adj, out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

/// Maximal sets of pairwise compatible projections, each checked to be a
/// Boolean subalgebra of `P`.
pub fn blocks(cb: &FiniteBase) -> Result<Vec<Vec<usize>>> {
    let proj = cb.projections();
    let k = proj.len();
    if k > MAX_PROJECTIONS {
        return Err(Error::SizeLimit(format!("{k} projections for block enumeration")));
    }
    let adj: Vec<Bits> = (0..k)
        .map(|i| {
            let mut b = Bits::empty(k);
            for j in 0..k {
                if i != j && cb.projections_compatible(proj[i], proj[j]) {
                    b.insert(j);
                }
            }
            b
        })
        .collect();
    let mut out = Vec::new();
    bron_kerbosch(&mut Vec::new(), Bits::full(k), Bits::empty(k), &adj, &mut out);
    let alg = cb.algebra();
    let mut blocks: Vec<Vec<usize>> = out
        .into_iter()
        .map(|c| {
            let mut b: Vec<usize> = c.into_iter().map(|i| proj[i]).collect();
            b.sort_unstable();
            b
        })
        .collect();
    blocks.sort();
    for b in &blocks {
        let inside = |x: usize| b.binary_search(&x).is_ok();
        for &p in b {
            if !inside(alg.ortho(&p)) {
                return Err(Error::Inconsistent(format!(
                    "block not closed under ′ at {}",
                    alg.label(p)
                )));
            }
            for &q in b {
                if !inside(cb.apply(p, q)) {
                    return Err(Error::Inconsistent(format!(
                        "block not closed under ∧ at {}, {}",
                        alg.label(p),
                        alg.label(q)
                    )));
                }
            }
        }
    }
    Ok(blocks)
}

/// `C(B) = ⋂_{p∈B} C(p)`.
pub fn c_block(cb: &FiniteBase, block: &[usize]) -> Vec<usize> {
    cb.algebra()
        .elements()
        .filter(|&a| block.iter().all(|&p| cb.in_c(a, p)))
        .collect()
}
