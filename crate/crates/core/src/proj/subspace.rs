use crate::error::{Error, Result};

/// Linear subspace stored by an orthonormal basis.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSubspace {
    ambient: usize,
    basis: Vec<Vec<f64>>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl LinearSubspace {
    /// Orthonormalizes the spanning vectors (Gram-Schmidt applied twice);
    /// vectors dependent on earlier ones are dropped.
    pub fn span(ambient: usize, vectors: &[Vec<f64>]) -> Result<Self> {
        let mut basis: Vec<Vec<f64>> = Vec::new();
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    got: v.len(),
                });
            }
            let scale = dot(v, v).sqrt();
            if !scale.is_finite() {
                return Err(Error::Precondition("non-finite spanning vector".into()));
            }
            let mut w = v.clone();
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(&w, b);
                    for (wi, bi) in w.iter_mut().zip(b) {
                        *wi -= c * bi;
                    }
                }
            }
            let n = dot(&w, &w).sqrt();
            if n > 1e-10 * scale && n > 0.0 {
                basis.push(w.iter().map(|x| x / n).collect());
            }
        }
        if basis.is_empty() {
            return Err(Error::ZeroDirection);
        }
        Ok(Self { ambient, basis })
    }

    /// The span of the listed coordinate axes (0-based).
    pub fn coordinate(ambient: usize, axes: &[usize]) -> Result<Self> {
        let vectors: Vec<Vec<f64>> = axes
            .iter()
            .map(|&i| {
                if i >= ambient {
                    return Err(Error::DimensionMismatch {
                        expected: ambient,
                        got: i + 1,
                    });
                }
                let mut e = vec![0.0; ambient];
                e[i] = 1.0;
                Ok(e)
            })
            .collect::<Result<_>>()?;
        Self::span(ambient, &vectors)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    /// Coordinates of the projection of `p` in the stored basis.
    pub fn coords(&self, p: &[f64]) -> Vec<f64> {
        self.basis.iter().map(|b| dot(b, p)).collect()
    }

    pub fn project(&self, p: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.ambient];
        for b in &self.basis {
            let c = dot(b, p);
            for (o, bi) in out.iter_mut().zip(b) {
                *o += c * bi;
            }
        }
        out
    }

    /// `‖p − P_B p‖ ≤ tol·max(1, ‖p‖)`.
    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        let q = self.project(p);
        let d = p.iter().zip(&q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        d <= tol * dot(p, p).sqrt().max(1.0)
    }
}

pub fn project_subspace(b: &LinearSubspace, p: &[f64]) -> Result<Vec<f64>> {
    if p.len() != b.ambient {
        return Err(Error::DimensionMismatch {
            expected: b.ambient,
            got: p.len(),
        });
    }
    Ok(b.project(p))
}
