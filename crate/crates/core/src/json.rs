//! JSON wire formats for systems, tuples and reports.
//!
//! Polynomial encoding: `{"dim": n, "terms": [{"exp": [a1,...,an], "re": r,
//! "im": i}, ...]}`. Tuples serialize as `{"A0": [...], "E": [[...], ...],
//! "D": [...], "family": "..."}` with exponents as integer arrays.

use serde::{Deserialize, Serialize};

use crate::admissible::{AdmissibleTuple, TupleFamily};
use crate::error::{Error, Result};
use crate::poly::{Exponent, PolySystem, Polynomial, Support, C64};
use crate::solver::SolveReport;

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub re: f64,
    pub im: f64,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PolyJson {
    pub dim: usize,
    pub terms: Vec<TermJson>,
}

impl From<&Polynomial> for PolyJson {
    fn from(p: &Polynomial) -> Self {
        PolyJson {
            dim: p.dim(),
            terms: p
                .terms()
                .map(|(e, c)| TermJson {
                    exp: e.entries().to_vec(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }
}

impl TryFrom<&PolyJson> for Polynomial {
    type Error = Error;

    fn try_from(j: &PolyJson) -> Result<Polynomial> {
        Polynomial::new(
            j.dim,
            j.terms
                .iter()
                .map(|t| (Exponent::new(t.exp.clone()), C64::new(t.re, t.im))),
        )
    }
}

/// Optional structural hints a system file can carry so the closed-form
/// tuple constructions know their parameters.
#[derive(Serialize, Deserialize, Clone, Debug, Default)]
pub struct StructureJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<u32>>,
    /// Generator points of the common polytope P (unmixed/incremental).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<u32>>>,
    /// Variable-block sizes (multi-graded families).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<usize>>,
    /// Rows = polynomials, columns = blocks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_matrix: Option<Vec<Vec<u32>>>,
    /// Per-block generator points (multi-unmixed).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block_generators: Option<Vec<Vec<Vec<u32>>>>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SystemJson {
    pub dim: usize,
    pub polys: Vec<PolyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureJson>,
}

impl SystemJson {
    pub fn from_system(f: &PolySystem, structure: Option<StructureJson>) -> Self {
        SystemJson {
            dim: f.dim(),
            polys: f.polys().iter().map(PolyJson::from).collect(),
            structure,
        }
    }

    pub fn to_system(&self) -> Result<PolySystem> {
        let polys = self
            .polys
            .iter()
            .map(Polynomial::try_from)
            .collect::<Result<Vec<_>>>()?;
        let f = PolySystem::new(polys)?;
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: f.dim(),
            });
        }
        Ok(f)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TupleJson {
    #[serde(rename = "A0")]
    pub a0: Vec<Vec<u32>>,
    #[serde(rename = "E")]
    pub e: Vec<Vec<Vec<u32>>>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<u32>>,
    pub family: String,
}

fn support_from_rows(dim: usize, rows: &[Vec<u32>]) -> Result<Support> {
    Support::from_rows(dim, rows)
}

impl From<&AdmissibleTuple> for TupleJson {
    fn from(t: &AdmissibleTuple) -> Self {
        let rows = |s: &Support| s.iter().map(|e| e.entries().to_vec()).collect::<Vec<_>>();
        TupleJson {
            a0: rows(t.a0()),
            e: t.all_shifts().iter().map(&rows).collect(),
            d: rows(t.d()),
            family: t.family().as_str().to_string(),
        }
    }
}

impl TupleJson {
    pub fn to_tuple(&self, dim: usize) -> Result<AdmissibleTuple> {
        let family = TupleFamily::parse(&self.family)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family {}", self.family)))?;
        let a0 = support_from_rows(dim, &self.a0)?;
        let e = self
            .e
            .iter()
            .map(|rows| support_from_rows(dim, rows))
            .collect::<Result<Vec<_>>>()?;
        let d = support_from_rows(dim, &self.d)?;
        if e.is_empty() {
            return Err(Error::EmptyList);
        }
        Ok(AdmissibleTuple::from_parts_unchecked(a0, e, d, family))
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SolutionJson {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    pub bwe: f64,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TimingsJson {
    pub cokernel_s: f64,
    pub family_s: f64,
    pub eigen_s: f64,
    pub extract_s: f64,
    pub filter_s: f64,
    pub total_s: f64,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TolerancesJson {
    pub rtol: f64,
    pub cluster_tol: f64,
    pub bwe_threshold: f64,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ReportJson {
    pub solutions: Vec<SolutionJson>,
    pub gamma: usize,
    pub d_size: usize,
    pub candidates_total: usize,
    pub timings: TimingsJson,
    pub seed: u64,
    pub tolerances: TolerancesJson,
    pub f0_redraws: usize,
}

impl From<&SolveReport> for ReportJson {
    fn from(r: &SolveReport) -> Self {
        ReportJson {
            solutions: r
                .solutions
                .iter()
                .map(|s| SolutionJson {
                    re: s.point.iter().map(|z| z.re).collect(),
                    im: s.point.iter().map(|z| z.im).collect(),
                    bwe: s.bwe,
                })
                .collect(),
            gamma: r.gamma,
            d_size: r.d_size,
            candidates_total: r.candidates_total,
            timings: TimingsJson {
                cokernel_s: r.timings.cokernel_s,
                family_s: r.timings.family_s,
                eigen_s: r.timings.eigen_s,
                extract_s: r.timings.extract_s,
                filter_s: r.timings.filter_s,
                total_s: r.timings.total_s,
            },
            seed: r.seed,
            tolerances: TolerancesJson {
                rtol: r.rtol,
                cluster_tol: r.cluster_tol,
                bwe_threshold: r.bwe_threshold,
            },
            f0_redraws: r.f0_redraws,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::tuple_dense;
    use crate::generators::demo_2d;

    #[test]
    fn polynomial_round_trip() {
        let p =
            Polynomial::from_terms(2, &[(vec![0, 0], -1.0, 0.5), (vec![2, 1], 3.0, 0.0)]).unwrap();
        let j = PolyJson::from(&p);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"exp\""));
        assert!(text.contains("\"re\""));
        let back: PolyJson = serde_json::from_str(&text).unwrap();
        let q = Polynomial::try_from(&back).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn polynomial_wire_shape() {
        let text = r#"{"dim": 2, "terms": [{"exp": [1, 0], "re": 2.0, "im": -1.0}]}"#;
        let j: PolyJson = serde_json::from_str(text).unwrap();
        let p = Polynomial::try_from(&j).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coeff(&Exponent::new(vec![1, 0])), C64::new(2.0, -1.0));
    }

    #[test]
    fn system_round_trip() {
        let demo = demo_2d();
        let j = SystemJson::from_system(&demo.system, None);
        let text = serde_json::to_string_pretty(&j).unwrap();
        let back: SystemJson = serde_json::from_str(&text).unwrap();
        let f = back.to_system().unwrap();
        assert_eq!(f.len(), 3);
        for (a, b) in f.polys().iter().zip(demo.system.polys()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn tuple_round_trip() {
        let t = tuple_dense(2, &[2, 3]).unwrap();
        let j = TupleJson::from(&t);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"A0\""));
        assert!(text.contains("\"family\":\"dense\""));
        let back: TupleJson = serde_json::from_str(&text).unwrap();
        let t2 = back.to_tuple(2).unwrap();
        assert_eq!(t2.d(), t.d());
        assert_eq!(t2.a0(), t.a0());
        assert_eq!(t2.all_shifts().len(), t.all_shifts().len());
    }
}
