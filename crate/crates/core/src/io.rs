//! JSON interchange: the parameters file, bundle export, and numeric
//! formatting.
//!
//! Exact quantities (parameters, generators, ϑ) travel as rational strings
//! "num/den"; floating matrices travel as decimal strings with 17
//! significant digits; complex entries as [re, im] pairs. All maps are
//! emitted through structs with fixed field order so identical inputs
//! produce identical bytes.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lct::{validate_params, LctParams, ParamError};
use crate::mat::{CMat, GMat, QMat, RMat, Rat};
use crate::signature::Signature;
use crate::spin::{BundleResiduals, SpinBundle, SpinConvention};
use crate::weyl::ConvKind;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational literal {0:?}")]
    BadRational(String),
    #[error("bad matrix shape: {0}")]
    BadShape(String),
    #[error("{0}")]
    Params(#[from] ParamError),
}

/// On-disk parameter file. Matrices may be omitted and default to zero.
#[derive(Debug, Deserialize)]
pub struct ParamsFile {
    pub signature: SignatureSpec,
    #[serde(default)]
    pub theta: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub phi: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub mu: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub lambda: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SignatureSpec {
    pub plus: usize,
    pub minus: usize,
}

/// Parse "num/den" or "num" into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rat, IoError> {
    let t = s.trim();
    let mut parts = t.splitn(2, '/');
    let num = parts.next().unwrap_or_default();
    let num: num_bigint::BigInt =
        num.parse().map_err(|_| IoError::BadRational(s.to_string()))?;
    match parts.next() {
        None => Ok(Rat::from_integer(num)),
        Some(den) => {
            let den: num_bigint::BigInt =
                den.parse().map_err(|_| IoError::BadRational(s.to_string()))?;
            if den.is_zero() {
                return Err(IoError::BadRational(s.to_string()));
            }
            Ok(Rat::new(num, den))
        }
    }
}

fn parse_matrix(rows: &Option<Vec<Vec<String>>>, n: usize, name: &str) -> Result<QMat, IoError> {
    match rows {
        None => Ok(QMat::zeros(n, n)),
        Some(rows) => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(IoError::BadShape(format!("{name} must be {n}x{n}")));
            }
            let mut m = QMat::zeros(n, n);
            for (i, row) in rows.iter().enumerate() {
                for (j, cell) in row.iter().enumerate() {
                    m.set(i, j, parse_rational(cell)?);
                }
            }
            Ok(m)
        }
    }
}

/// Parse and validate a parameter file.
pub fn params_from_json(text: &str) -> Result<LctParams, IoError> {
    let file: ParamsFile = serde_json::from_str(text)?;
    let sig = Signature::new(file.signature.plus, file.signature.minus);
    let n = sig.n();
    let theta = parse_matrix(&file.theta, n, "theta")?;
    let phi = parse_matrix(&file.phi, n, "phi")?;
    let mu = parse_matrix(&file.mu, n, "mu")?;
    let lambda = parse_matrix(&file.lambda, n, "lambda")?;
    Ok(validate_params(theta, phi, mu, lambda, sig)?)
}

/// 17-significant-digit decimal rendering.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn rmat_to_strings(m: &RMat) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| fmt_f64(*m.get(i, j))).collect())
        .collect()
}

pub fn cmat_to_strings(m: &CMat) -> Vec<Vec<[String; 2]>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let z = m.get(i, j);
                    [fmt_f64(z.re), fmt_f64(z.im)]
                })
                .collect()
        })
        .collect()
}

pub fn qmat_to_strings(m: &QMat) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

pub fn gmat_to_strings(m: &GMat) -> Vec<Vec<[String; 2]>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let z = m.get(i, j);
                    [z.re.to_string(), z.im.to_string()]
                })
                .collect()
        })
        .collect()
}

/// Gaussian-integer matrix as [re, im] integer pairs (generator dumps).
pub fn imat_to_int_pairs(m: &crate::mat::IMat) -> Vec<Vec<[i64; 2]>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let z = m.get(i, j);
                    [z.re, z.im]
                })
                .collect()
        })
        .collect()
}

/// Read back a decimal-string matrix (round-trip support for consumers).
pub fn rmat_from_strings(rows: &[Vec<String>]) -> Result<RMat, IoError> {
    let r = rows.len();
    let c = rows.first().map(|x| x.len()).unwrap_or(0);
    if r == 0 || rows.iter().any(|row| row.len() != c) {
        return Err(IoError::BadShape("ragged or empty matrix".into()));
    }
    let mut m = RMat::zeros(r, c);
    for (i, row) in rows.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let v: f64 = cell
                .parse()
                .map_err(|_| IoError::BadRational(cell.clone()))?;
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// Serialized spin bundle: everything exact stays exact.
#[derive(Debug, Serialize)]
pub struct BundleExport {
    pub signature: SignatureSpec,
    pub commutator_convention: &'static str,
    pub spin_convention: SpinConvention,
    pub adjoint_direction: &'static str,
    /// A, exact.
    pub sl_generator: Vec<Vec<String>>,
    /// g = exp(A), decimal.
    pub group_element: Vec<Vec<String>>,
    /// X, exact.
    pub ortho_generator: Vec<Vec<String>>,
    /// O = exp(X), decimal.
    pub ortho_element: Vec<Vec<String>>,
    /// ϑ, exact Gaussian rational, [re, im] pairs.
    pub spin_generator: Vec<Vec<[String; 2]>>,
    /// S = exp(ϑ), decimal [re, im] pairs.
    pub spin_element: Vec<Vec<[String; 2]>>,
    pub residuals: BundleResiduals,
}

pub fn export_bundle(bundle: &SpinBundle, kind: ConvKind) -> BundleExport {
    let sig = bundle.params.sig();
    BundleExport {
        signature: SignatureSpec { plus: sig.n_plus, minus: sig.n_minus },
        commutator_convention: kind.label(),
        spin_convention: bundle.theta_spin.convention,
        adjoint_direction: "S . Gamma . S^-1",
        sl_generator: qmat_to_strings(&bundle.sl_gen),
        group_element: rmat_to_strings(&bundle.group.mat),
        ortho_generator: qmat_to_strings(&bundle.ortho_gen.mat),
        ortho_element: rmat_to_strings(&bundle.ortho),
        spin_generator: gmat_to_strings(&bundle.theta_spin.mat),
        spin_element: cmat_to_strings(&bundle.spin),
        residuals: bundle.residuals.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::rat;

    #[test]
    fn rational_parsing_round_trips() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-2").unwrap(), rat(-2, 1));
        assert_eq!(parse_rational(" 5/10 ").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn params_file_with_defaults() {
        let text = r#"{"signature": {"plus": 1, "minus": 0}}"#;
        let p = params_from_json(text).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn params_file_full() {
        let text = r#"{
            "signature": {"plus": 1, "minus": 0},
            "theta": [["1/4"]],
            "phi": [["0"]],
            "mu": [["-1/3"]],
            "lambda": [["0"]]
        }"#;
        let p = params_from_json(text).unwrap();
        assert_eq!(*p.theta().get(0, 0), rat(1, 4));
        assert_eq!(*p.mu().get(0, 0), rat(-1, 3));
    }

    #[test]
    fn constraint_violations_surface() {
        let text = r#"{"signature": {"plus": 1, "minus": 0}, "lambda": [["5"]]}"#;
        let err = params_from_json(text).unwrap_err();
        assert!(format!("{err}").contains("lambda"));
    }

    #[test]
    fn shape_errors_surface() {
        let text = r#"{"signature": {"plus": 1, "minus": 1}, "theta": [["1"]]}"#;
        assert!(matches!(params_from_json(text), Err(IoError::BadShape(_))));
    }

    #[test]
    fn decimal_format_has_17_significant_digits() {
        let s = fmt_f64(std::f64::consts::PI);
        assert_eq!(s, "3.1415926535897931e0");
        let m = RMat::from_vec(1, 1, vec![0.25]);
        let rows = rmat_to_strings(&m);
        let back = rmat_from_strings(&rows).unwrap();
        assert_eq!(*back.get(0, 0), 0.25);
    }
}
