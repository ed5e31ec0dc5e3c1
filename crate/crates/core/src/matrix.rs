//! The effect algebra of real symmetric matrices `0 ≤ a ≤ I` with the
//! compressions `J_p(a) = p a p`.

use crate::algebra::EffectAlgebra;
use crate::compbase::CompressionBase;
use crate::error::{Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};

pub type Mat = DMatrix<f64>;

pub const EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixAlgebra {
    dim: usize,
    eps: f64,
}

/// Eigenvalues with their eigenvectors as columns, eigenvalues ascending.
fn eigen(a: &Mat) -> (Vec<f64>, Mat) {
    let sym = (a + a.transpose()) * 0.5;
    let e = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..e.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| e.eigenvalues[i].total_cmp(&e.eigenvalues[j]));
    let vals = order.iter().map(|&i| e.eigenvalues[i]).collect();
    let vecs = Mat::from_columns(&order.iter().map(|&i| e.eigenvectors.column(i).into_owned()).collect::<Vec<_>>());
    (vals, vecs)
}

fn projector(vecs: &Mat, cols: &[usize]) -> Mat {
    let n = vecs.nrows();
    let mut p = Mat::zeros(n, n);
    for &c in cols {
        let v = vecs.column(c);
        p += &v * v.transpose();
    }
    p
}

impl MatrixAlgebra {
    pub fn new(dim: usize) -> Result<Self> {
        if !(2..=4).contains(&dim) {
            return Err(Error::InvalidParameter(format!("matrix dimension {dim} must be 2, 3 or 4")));
        }
        Ok(MatrixAlgebra { dim, eps: EPS })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// An effect from row-major entries.
    pub fn element(&self, entries: &[f64]) -> Result<Mat> {
        if entries.len() != self.dim * self.dim {
            return Err(Error::ElementNotInCarrier(format!(
                "{} entries for a {}×{} matrix",
                entries.len(),
                self.dim,
                self.dim
            )));
        }
        let a = Mat::from_row_slice(self.dim, self.dim, entries);
        self.check(&a)?;
        Ok(a)
    }

    pub fn check(&self, a: &Mat) -> Result<()> {
        if a.nrows() != self.dim || a.ncols() != self.dim {
            return Err(Error::ElementNotInCarrier(format!("{}×{} matrix", a.nrows(), a.ncols())));
        }
        if (a - a.transpose()).amax() > self.eps {
            return Err(Error::ElementNotInCarrier("matrix is not symmetric".into()));
        }
        let (vals, _) = eigen(a);
        if vals[0] < -self.eps || vals[vals.len() - 1] > 1.0 + self.eps {
            return Err(Error::ElementNotInCarrier(format!(
                "spectrum [{}, {}] leaves [0, 1]",
                vals[0],
                vals[vals.len() - 1]
            )));
        }
        Ok(())
    }

    pub fn spectrum(&self, a: &Mat) -> Vec<f64> {
        eigen(a).0
    }

    /// Spectral projections of `a`, one per eigenvalue cluster, with the
    /// cluster's eigenvalue.
    pub fn eigenprojections(&self, a: &Mat) -> Vec<(f64, Mat)> {
        let (vals, vecs) = eigen(a);
        let mut out: Vec<(f64, Vec<usize>)> = Vec::new();
        for (i, &v) in vals.iter().enumerate() {
            match out.last_mut() {
                Some((w, cols)) if (v - *w).abs() <= self.eps => cols.push(i),
                _ => out.push((v, vec![i])),
            }
        }
        out.into_iter().map(|(v, cols)| (v, projector(&vecs, &cols))).collect()
    }

    /// `χ_{a ≤ λ}(a)`.
    pub fn spectral_projection(&self, a: &Mat, lambda: f64) -> Mat {
        let (vals, vecs) = eigen(a);
        let cols: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] <= lambda + self.eps).collect();
        projector(&vecs, &cols)
    }

    /// Joint eigenspaces of two commuting matrices.
    fn joint_projections(&self, e: &Mat, f: &Mat) -> Vec<Mat> {
        let mut out = Vec::new();
        for (_, p) in self.eigenprojections(e) {
            let (vals, vecs) = eigen(&p);
            let basis: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] > 0.5).collect();
            let v = Mat::from_columns(&basis.iter().map(|&i| vecs.column(i).into_owned()).collect::<Vec<_>>());
            let restricted = v.transpose() * f * &v;
            for (_, q) in self.eigenprojections(&restricted) {
                out.push(&v * q * v.transpose());
            }
        }
        out
    }

    fn sums_of(&self, parts: &[Mat]) -> Vec<Mat> {
        (0..1usize << parts.len())
            .map(|mask| {
                parts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(Mat::zeros(self.dim, self.dim), |acc, (_, p)| acc + p)
            })
            .collect()
    }

    fn commutes(&self, a: &Mat, b: &Mat) -> bool {
        (a * b - b * a).amax() <= self.eps
    }

    /// `tr(ρ a)`.
    pub fn trace_state(rho: &Mat, a: &Mat) -> f64 {
        (rho * a).trace()
    }
}

impl EffectAlgebra for MatrixAlgebra {
    type Elem = Mat;

    fn zero(&self) -> Mat {
        Mat::zeros(self.dim, self.dim)
    }
    fn one(&self) -> Mat {
        Mat::identity(self.dim, self.dim)
    }
    fn sum(&self, a: &Mat, b: &Mat) -> Option<Mat> {
        let s = a + b;
        (eigen(&s).0.last().copied().unwrap_or(0.0) <= 1.0 + self.eps).then_some(s)
    }
    fn ortho(&self, a: &Mat) -> Mat {
        self.one() - a
    }
    fn leq(&self, a: &Mat, b: &Mat) -> bool {
        eigen(&(b - a)).0[0] >= -self.eps
    }
    fn ominus(&self, b: &Mat, a: &Mat) -> Option<Mat> {
        self.leq(a, b).then(|| b - a)
    }
    fn same(&self, a: &Mat, b: &Mat) -> bool {
        (a - b).amax() <= self.eps
    }
    fn tolerance(&self) -> f64 {
        self.eps
    }
    fn is_archimedean(&self) -> bool {
        true
    }
    fn describe(&self, a: &Mat) -> String {
        let rows: Vec<String> = a
            .row_iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|&x| fmt_entry(x)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

pub fn fmt_entry(x: f64) -> String {
    let r = (x * 1e6).round() / 1e6;
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r}")
}

impl CompressionBase for MatrixAlgebra {
    fn is_projection(&self, p: &Mat) -> bool {
        p.nrows() == self.dim
            && (p - p.transpose()).amax() <= self.eps
            && (p * p - p).amax() <= self.eps
    }

    fn compress(&self, p: &Mat, a: &Mat) -> Mat {
        p * a * p
    }

    fn projection_cover(&self, a: &Mat) -> Result<Mat> {
        let (vals, vecs) = eigen(a);
        let cols: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] > self.eps).collect();
        Ok(projector(&vecs, &cols))
    }

    /// Eigenvalues within `ε` of zero count as nonpositive.
    fn positive_part(&self, b: &Mat, a: &Mat) -> Result<Mat> {
        if !self.commutes(a, b) {
            return Err(Error::ComparabilityMissing(self.describe(a), self.describe(b)));
        }
        let (vals, vecs) = eigen(&(b - a));
        let mut out = Mat::zeros(self.dim, self.dim);
        for (i, &v) in vals.iter().enumerate() {
            if v > self.eps {
                let c = vecs.column(i);
                out += (&c * c.transpose()) * v;
            }
        }
        Ok(out)
    }

    fn commute(&self, e: &Mat, f: &Mat) -> Result<bool> {
        Ok(self.commutes(e, f))
    }

    fn meet_projections(&self, p: &Mat, q: &Mat) -> Mat {
        p * q * p
    }

    fn bicommutant(&self, a: &Mat) -> Result<Vec<Mat>> {
        let parts: Vec<Mat> = self.eigenprojections(a).into_iter().map(|(_, p)| p).collect();
        Ok(self.sums_of(&parts))
    }

    fn has_b_property(&self, _a: &Mat) -> Result<bool> {
        Ok(true)
    }

    fn p_le_set(&self, e: &Mat, f: &Mat) -> Result<Vec<Mat>> {
        if !self.commutes(e, f) {
            return Ok(Vec::new());
        }
        let parts = self.joint_projections(e, f);
        Ok(self
            .sums_of(&parts)
            .into_iter()
            .filter(|p| {
                let po = self.ortho(p);
                self.leq(&self.compress(p, e), &self.compress(p, f))
                    && self.leq(&self.compress(&po, f), &self.compress(&po, e))
            })
            .collect())
    }
}
