//! JSON forms of matrices, certificates and LPs, and verification of
//! certificates read back from disk.
//!
//! Rationals are written as `"num/den"` strings; integers are also accepted
//! on input.

use anyhow::{bail, ensure, Context};
use hfrac_core::exactq::{format_rational, parse_rational, LinearProgram, LpSolution, Relation};
use hfrac_core::fracchrom::{verify_cover, FractionalCover};
use hfrac_core::haemers::FitCertificate;
use hfrac_core::hfrac::{
    rankr_to_drep, verify_drep, verify_pairrep, verify_rankrrep, verify_subspacerep, DRep, PairRep, RankRRep,
    SubspaceRep,
};
use hfrac_core::theta::{
    matrixrep_value, theta_lower_from_dual, theta_upper_from_orthorep, MatrixRep, OrthoRep,
};
use hfrac_core::combinat::CliqueCover;
use hfrac_core::{FMatrix, Graph, PrimeModulus, Rational};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u32>,
}

impl From<&FMatrix> for MatrixJson {
    fn from(m: &FMatrix) -> Self {
        MatrixJson { p: m.modulus().get(), rows: m.rows(), cols: m.cols(), entries: m.entries().to_vec() }
    }
}

impl MatrixJson {
    pub fn to_matrix(&self) -> anyhow::Result<FMatrix> {
        let p = PrimeModulus::new(self.p as u64)?;
        ensure!(
            self.entries.len() == self.rows * self.cols,
            "{}x{} matrix with {} entries",
            self.rows,
            self.cols,
            self.entries.len()
        );
        if let Some(x) = self.entries.iter().find(|&&x| x >= self.p) {
            bail!("entry {x} is not reduced mod {}", self.p);
        }
        Ok(FMatrix::from_fn(self.rows, self.cols, p, |i, j| self.entries[i * self.cols + j]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverClassJson {
    pub clique: Vec<usize>,
    pub weight: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub a: MatrixJson,
    pub b: MatrixJson,
}

/// A witness for one bound, tagged by `"kind"`. `graph` is the expression the
/// certificate was issued for.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    IndependentSet {
        graph: String,
        vertices: Vec<usize>,
    },
    CliqueCover {
        graph: String,
        classes: Vec<Vec<usize>>,
    },
    FractionalCover {
        graph: String,
        value: String,
        d: u64,
        classes: Vec<CoverClassJson>,
    },
    Fit {
        graph: String,
        #[serde(flatten)]
        matrix: MatrixJson,
        claimed_rank: usize,
    },
    Drep {
        graph: String,
        d: usize,
        #[serde(flatten)]
        matrix: MatrixJson,
    },
    Pairrep {
        graph: String,
        p: u32,
        dim: usize,
        d: usize,
        pairs: Vec<PairJson>,
    },
    Rankr {
        graph: String,
        r: usize,
        sizes: Vec<usize>,
        #[serde(flatten)]
        matrix: MatrixJson,
    },
    Subspace {
        graph: String,
        p: u32,
        dim: usize,
        d: usize,
        bases: Vec<MatrixJson>,
    },
    Orthorep {
        graph: String,
        dim: usize,
        vectors: Vec<Vec<f64>>,
        handle: Vec<f64>,
        tol: f64,
    },
    Matrixrep {
        graph: String,
        dim: usize,
        blocks: Vec<Vec<Vec<f64>>>,
        handle: Vec<Vec<f64>>,
        tol: f64,
    },
}

/// Outcome of a successful check.
#[derive(Clone, Debug, PartialEq)]
pub struct Verified {
    pub kind: &'static str,
    pub summary: String,
}

fn q(r: &Rational) -> String {
    format_rational(r)
}

impl Certificate {
    pub fn independent_set(graph: &str, vertices: &[usize]) -> Self {
        let mut vertices = vertices.to_vec();
        vertices.sort_unstable();
        Certificate::IndependentSet { graph: graph.into(), vertices }
    }

    pub fn clique_cover(graph: &str, cover: &CliqueCover) -> Self {
        let mut classes: Vec<Vec<usize>> = cover
            .classes
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c
            })
            .collect();
        classes.sort();
        Certificate::CliqueCover { graph: graph.into(), classes }
    }

    pub fn fractional_cover(graph: &str, c: &FractionalCover) -> Self {
        Certificate::FractionalCover {
            graph: graph.into(),
            value: q(&c.value),
            d: c.d,
            classes: c.classes.iter().map(|(k, w)| CoverClassJson { clique: k.clone(), weight: q(w) }).collect(),
        }
    }

    pub fn fit(graph: &str, c: &FitCertificate) -> Self {
        Certificate::Fit { graph: graph.into(), matrix: (&c.matrix).into(), claimed_rank: c.claimed_rank }
    }

    pub fn drep(graph: &str, r: &DRep) -> Self {
        Certificate::Drep { graph: graph.into(), d: r.d, matrix: (&r.matrix).into() }
    }

    pub fn pairrep(graph: &str, r: &PairRep) -> Self {
        Certificate::Pairrep {
            graph: graph.into(),
            p: r.modulus.get(),
            dim: r.dim,
            d: r.d,
            pairs: r.pairs.iter().map(|(a, b)| PairJson { a: a.into(), b: b.into() }).collect(),
        }
    }

    pub fn rankr(graph: &str, r: &RankRRep) -> Self {
        Certificate::Rankr { graph: graph.into(), r: r.r, sizes: r.sizes.clone(), matrix: (&r.matrix).into() }
    }

    pub fn subspace(graph: &str, r: &SubspaceRep) -> Self {
        Certificate::Subspace {
            graph: graph.into(),
            p: r.modulus.get(),
            dim: r.dim,
            d: r.d,
            bases: r.bases.iter().map(Into::into).collect(),
        }
    }

    pub fn orthorep(graph: &str, r: &OrthoRep, tol: f64) -> Self {
        Certificate::Orthorep {
            graph: graph.into(),
            dim: r.dim,
            vectors: r.vectors.clone(),
            handle: r.handle.clone(),
            tol,
        }
    }

    pub fn matrixrep(graph: &str, r: &MatrixRep, tol: f64) -> Self {
        Certificate::Matrixrep {
            graph: graph.into(),
            dim: r.dim,
            blocks: r.blocks.clone(),
            handle: r.handle.clone(),
            tol,
        }
    }

    pub fn graph(&self) -> &str {
        match self {
            Certificate::IndependentSet { graph, .. }
            | Certificate::CliqueCover { graph, .. }
            | Certificate::FractionalCover { graph, .. }
            | Certificate::Fit { graph, .. }
            | Certificate::Drep { graph, .. }
            | Certificate::Pairrep { graph, .. }
            | Certificate::Rankr { graph, .. }
            | Certificate::Subspace { graph, .. }
            | Certificate::Orthorep { graph, .. }
            | Certificate::Matrixrep { graph, .. } => graph,
        }
    }

    /// Re-checks the certificate against `g` from scratch.
    pub fn verify(&self, g: &Graph) -> anyhow::Result<Verified> {
        match self {
            Certificate::IndependentSet { vertices, .. } => {
                ensure!(g.is_independent_set(vertices)?, "vertex set is not independent");
                let mut s = vertices.clone();
                s.sort_unstable();
                s.dedup();
                ensure!(s.len() == vertices.len(), "repeated vertex");
                Ok(Verified { kind: "independent_set", summary: format!("alpha >= {}", s.len()) })
            }
            Certificate::CliqueCover { classes, .. } => {
                let cover = CliqueCover { classes: classes.clone() };
                cover.validate(g)?;
                Ok(Verified { kind: "clique_cover", summary: format!("clique partition into {} cliques", cover.len()) })
            }
            Certificate::FractionalCover { value, d, classes, .. } => {
                let parsed = classes
                    .iter()
                    .map(|c| Ok((c.clique.clone(), parse_rational(&c.weight)?)))
                    .collect::<anyhow::Result<Vec<_>>>()?;
                let cover = FractionalCover { classes: parsed, value: parse_rational(value)?, d: *d };
                verify_cover(g, &cover)?;
                Ok(Verified {
                    kind: "fractional_cover",
                    summary: format!("fractional clique cover number <= {}", q(&cover.value)),
                })
            }
            Certificate::Fit { matrix, claimed_rank, .. } => {
                let cert = FitCertificate {
                    graph_hash: g.fingerprint(),
                    matrix: matrix.to_matrix()?,
                    claimed_rank: *claimed_rank,
                };
                cert.verify(g)?;
                Ok(Verified { kind: "fit", summary: format!("H(G; GF({})) <= {claimed_rank}", matrix.p) })
            }
            Certificate::Drep { d, matrix, .. } => {
                let rep = DRep { d: *d, matrix: matrix.to_matrix()? };
                verify_drep(g, &rep)?;
                Ok(Verified {
                    kind: "drep",
                    summary: format!("H_f(G; GF({})) <= {}", matrix.p, q(&rep.ratio())),
                })
            }
            Certificate::Pairrep { p, dim, d, pairs, .. } => {
                let rep = PairRep {
                    dim: *dim,
                    d: *d,
                    modulus: PrimeModulus::new(*p as u64)?,
                    pairs: pairs
                        .iter()
                        .map(|pr| Ok((pr.a.to_matrix()?, pr.b.to_matrix()?)))
                        .collect::<anyhow::Result<_>>()?,
                };
                verify_pairrep(g, &rep)?;
                Ok(Verified { kind: "pairrep", summary: format!("H_f(G; GF({p})) <= {}", q(&rep.ratio())) })
            }
            Certificate::Rankr { r, sizes, matrix, .. } => {
                let rep = RankRRep { r: *r, sizes: sizes.clone(), matrix: matrix.to_matrix()? };
                verify_rankrrep(g, &rep)?;
                let drep = rankr_to_drep(g, &rep)?;
                Ok(Verified {
                    kind: "rankr",
                    summary: format!(
                        "H_f(G; GF({})) <= {} (rank {} / r {}; reduced d-representation ratio {})",
                        matrix.p,
                        q(&Rational::new((rep.matrix.rank() as i64).into(), (*r as i64).into())),
                        rep.matrix.rank(),
                        r,
                        q(&drep.ratio())
                    ),
                })
            }
            Certificate::Subspace { p, dim, d, bases, .. } => {
                let rep = SubspaceRep {
                    dim: *dim,
                    d: *d,
                    modulus: PrimeModulus::new(*p as u64)?,
                    bases: bases.iter().map(MatrixJson::to_matrix).collect::<anyhow::Result<_>>()?,
                };
                verify_subspacerep(g, &rep)?;
                Ok(Verified {
                    kind: "subspace",
                    summary: format!("({dim}, {d})-subspace representation over GF({p})"),
                })
            }
            Certificate::Orthorep { dim, vectors, handle, tol, .. } => {
                ensure!(*tol > 0.0 && *tol < 1e-3, "tolerance {tol} out of range");
                let rep = OrthoRep { dim: *dim, vectors: vectors.clone(), handle: handle.clone() };
                let up = theta_upper_from_orthorep(g, &rep, *tol)?;
                let low = theta_lower_from_dual(&g.complement(), &rep, *tol)?;
                Ok(Verified {
                    kind: "orthorep",
                    summary: format!("theta(G) <= {up}; theta(complement) >= {low}; tol {tol:e}"),
                })
            }
            Certificate::Matrixrep { dim, blocks, handle, tol, .. } => {
                ensure!(*tol > 0.0 && *tol < 1e-3, "tolerance {tol} out of range");
                let rep = MatrixRep { dim: *dim, blocks: blocks.clone(), handle: handle.clone() };
                let v = matrixrep_value(g, &rep, *tol)?;
                Ok(Verified { kind: "matrixrep", summary: format!("theta(G) <= {v}; tol {tol:e}") })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintJson {
    pub coeffs: Vec<String>,
    pub relation: String,
    pub rhs: String,
}

/// `{"objective", "constant", "constraints", "lower", "upper"}`; absent
/// bounds are `null`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpJson {
    pub objective: Vec<String>,
    pub constant: String,
    pub constraints: Vec<ConstraintJson>,
    pub lower: Vec<Option<String>>,
    pub upper: Vec<Option<String>>,
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(q).collect()
}

fn parse_all(v: &[String]) -> anyhow::Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s).with_context(|| format!("bad rational {s:?}"))).collect()
}

impl From<&LinearProgram> for LpJson {
    fn from(lp: &LinearProgram) -> Self {
        LpJson {
            objective: strings(&lp.objective),
            constant: q(&lp.constant),
            constraints: lp
                .constraints
                .iter()
                .map(|c| ConstraintJson {
                    coeffs: strings(&c.coeffs),
                    relation: match c.relation {
                        Relation::Le => "le",
                        Relation::Ge => "ge",
                        Relation::Eq => "eq",
                    }
                    .into(),
                    rhs: q(&c.rhs),
                })
                .collect(),
            lower: lp.lower.iter().map(|b| b.as_ref().map(q)).collect(),
            upper: lp.upper.iter().map(|b| b.as_ref().map(q)).collect(),
        }
    }
}

impl LpJson {
    pub fn to_lp(&self) -> anyhow::Result<LinearProgram> {
        let mut lp = LinearProgram::maximize(parse_all(&self.objective)?).with_constant(parse_rational(&self.constant)?);
        for c in &self.constraints {
            let rel = match c.relation.as_str() {
                "le" => Relation::Le,
                "ge" => Relation::Ge,
                "eq" => Relation::Eq,
                other => bail!("unknown relation {other:?}"),
            };
            lp.add_constraint(parse_all(&c.coeffs)?, rel, parse_rational(&c.rhs)?);
        }
        ensure!(self.lower.len() == lp.num_vars() && self.upper.len() == lp.num_vars(), "bound vectors have the wrong length");
        for i in 0..lp.num_vars() {
            let lo = self.lower[i].as_deref().map(parse_rational).transpose()?;
            let hi = self.upper[i].as_deref().map(parse_rational).transpose()?;
            lp.set_bounds(i, lo, hi);
        }
        lp.validate()?;
        Ok(lp)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpSolutionJson {
    pub status: String,
    pub value: String,
    pub assignment: Vec<String>,
    pub dual: Vec<String>,
}

impl From<&LpSolution> for LpSolutionJson {
    fn from(s: &LpSolution) -> Self {
        LpSolutionJson {
            status: format!("{:?}", s.status).to_lowercase(),
            value: q(&s.value),
            assignment: strings(&s.assignment),
            dual: strings(&s.dual),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hfrac_core::exactq::simplex_solve;
    use hfrac_core::graph::cycle;
    use hfrac_core::hfrac::cycle_drep;
    use hfrac_core::theta::johnson_lp;

    #[test]
    fn matrix_json_shape() {
        let m = FMatrix::identity(2, PrimeModulus::new(3).unwrap());
        let j = serde_json::to_string(&MatrixJson::from(&m)).unwrap();
        assert_eq!(j, r#"{"p":3,"rows":2,"cols":2,"entries":[1,0,0,1]}"#);
        let back: MatrixJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back.to_matrix().unwrap(), m);
        let bad = MatrixJson { p: 3, rows: 1, cols: 1, entries: vec![3] };
        assert!(bad.to_matrix().is_err());
        let bad = MatrixJson { p: 4, rows: 1, cols: 1, entries: vec![1] };
        assert!(bad.to_matrix().is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let g = cycle(5).unwrap();
        let rep = cycle_drep(2, PrimeModulus::new(2).unwrap()).unwrap();
        let cert = Certificate::drep("cycle:5", &rep);
        let text = serde_json::to_string(&cert).unwrap();
        assert!(text.starts_with(r#"{"kind":"drep","graph":"cycle:5","d":2,"p":2,"rows":10"#));
        let back: Certificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.verify(&g).unwrap().summary, "H_f(G; GF(2)) <= 5/2");
        assert!(back.verify(&cycle(7).unwrap()).is_err());
    }

    #[test]
    fn lp_round_trip() {
        let lp = johnson_lp(2, 10).unwrap();
        let j = LpJson::from(&lp);
        assert_eq!(j.lower, vec![None, None]);
        let back = j.to_lp().unwrap();
        assert_eq!(back, lp);
        let sol = simplex_solve(&back).unwrap();
        assert_eq!(LpSolutionJson::from(&sol).value, "15/1");
    }
}
