//! Experiment configuration, k-sweeps, slope fitting and report emission.
//! This is the only human-facing surface; outputs are machine-readable
//! CSV/JSON tables.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::berezin;
use crate::coherent;
use crate::error::{Error, Result};
use crate::group;
use crate::irrep::{build_irrep, verify_irrep, Irrep, IrrepBundle};
use crate::lie::{build_cartan_weyl, build_root_system, CartanWeylBasis, Weight};
use crate::linalg::CVec;
use crate::orbit::{base_point, OrbitFunction, SignConvention};
use crate::quad::{self, build_quadrature, stabilizer_quadrature};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupSpec {
    pub series: String,
    pub rank: usize,
}

/// Function descriptor: kind "constant" | "linear" | "product" with the
/// parameter vectors in real-basis coordinates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionSpec {
    pub kind: String,
    #[serde(default)]
    pub parameters: Vec<Vec<f64>>,
    #[serde(default)]
    pub constant: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadratureSpec {
    #[serde(default = "default_scheme")]
    pub scheme: String,
    #[serde(default)]
    pub order: Option<u32>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { scheme: default_scheme(), order: None }
    }
}

fn default_scheme() -> String {
    "auto".into()
}

fn default_sign() -> String {
    "theorem".into()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default = "schema_default")]
    pub schema_version: u32,
    pub group: GroupSpec,
    pub lambda: Vec<i64>,
    pub k_values: Vec<u64>,
    #[serde(default)]
    pub functions: Vec<FunctionSpec>,
    #[serde(default)]
    pub quadrature: QuadratureSpec,
    #[serde(default = "default_sign")]
    pub sign_convention: String,
    #[serde(default)]
    pub seed: u64,
}

fn schema_default() -> u32 {
    SCHEMA_VERSION
}

impl ExperimentConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let cfg: ExperimentConfig = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.group.series != "A" {
            return Err(Error::Config(format!("unsupported series {:?}", self.group.series)));
        }
        if self.k_values.is_empty() || self.k_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("k_values must be nonempty and strictly increasing".into()));
        }
        let lam = self.weight();
        if !lam.is_dominant() || !lam.is_integral() {
            return Err(Error::Config("lambda must be dominant integral".into()));
        }
        if self.lambda.len() != self.group.rank {
            return Err(Error::Config("lambda length must equal the rank".into()));
        }
        self.sign()?;
        Ok(())
    }

    pub fn weight(&self) -> Weight {
        Weight::from_integers(&self.lambda)
    }

    pub fn sign(&self) -> Result<SignConvention> {
        match self.sign_convention.as_str() {
            "theorem" => Ok(SignConvention::Theorem),
            "liepbr" => Ok(SignConvention::LiePoisson),
            s => Err(Error::Config(format!("unknown sign convention {s:?}"))),
        }
    }
}

/// Materializes a FunctionSpec as an OrbitFunction.
pub fn function_from_spec(cw: &CartanWeylBasis, spec: &FunctionSpec) -> Result<OrbitFunction> {
    let dim = cw.dim_g();
    let check = |v: &Vec<f64>| -> Result<()> {
        if v.len() != dim {
            return Err(Error::Config(format!(
                "function parameter has length {}, expected {dim}",
                v.len()
            )));
        }
        Ok(())
    };
    match spec.kind.as_str() {
        "constant" => Ok(OrbitFunction::Constant(spec.constant.unwrap_or(1.0))),
        "linear" => {
            let p = spec
                .parameters
                .first()
                .ok_or_else(|| Error::Config("linear function needs one parameter vector".into()))?;
            check(p)?;
            Ok(OrbitFunction::Linear(p.clone()))
        }
        "product" => {
            for p in &spec.parameters {
                check(p)?;
            }
            Ok(OrbitFunction::Product(spec.parameters.clone()))
        }
        k => Err(Error::Config(format!("unknown function kind {k:?}"))),
    }
}

/// Default test pair: the first root-X and root-Y directions (these never
/// Poisson-commute on a nontrivial orbit).
pub fn default_function_pair(cw: &CartanWeylBasis) -> (OrbitFunction, OrbitFunction) {
    let dim = cw.dim_g();
    let rank = cw.root_system.rank;
    let mut x = vec![0.0; dim];
    x[rank] = 1.0;
    let mut y = vec![0.0; dim];
    y[rank + 1] = 1.0;
    (OrbitFunction::Linear(x), OrbitFunction::Linear(y))
}

#[derive(Debug, Clone, Serialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub flag: Option<String>,
}

/// OLS fit of log(value) against log(k). Values at or below the noise floor
/// (1e-12) decline the fit with a flag.
pub fn fit_slope(points: &[(f64, f64)]) -> Result<FitResult> {
    if points.len() < 3 {
        return Err(Error::Domain(format!("slope fit needs >= 3 points, got {}", points.len())));
    }
    if points.iter().any(|&(_, v)| v < 1e-12) {
        return Ok(FitResult {
            slope: f64::NAN,
            intercept: f64::NAN,
            r2: f64::NAN,
            flag: Some("below-noise-floor".into()),
        });
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    Ok(FitResult { slope, intercept, r2, flag: None })
}

#[derive(Debug, Clone, Serialize)]
pub struct DefectRow {
    pub k: u64,
    pub dim: u64,
    pub dirac_defect: Option<f64>,
    pub jordan_defect: Option<f64>,
    pub product_defect: Option<f64>,
    pub norm_gap: Option<f64>,
    pub equivariance_defect: Option<f64>,
    pub normalization_residual: f64,
    pub gilmore_residual: f64,
    pub duffield_gap: Option<f64>,
    pub runtime_ms: u128,
    pub valid: bool,
}

#[derive(Debug, Serialize)]
pub struct DefectReport {
    pub schema_version: u32,
    pub sign_convention: String,
    pub quadrature_scheme: String,
    pub quadrature_self_test: f64,
    pub rows: Vec<DefectRow>,
    pub fits: BTreeMap<String, FitResult>,
}

const CSV_HEADER: &str = "k,dim,dirac_defect,jordan_defect,product_defect,norm_gap,\
equivariance_defect,normalization_residual,gilmore_residual,duffield_gap,runtime_ms,valid";

impl DefectReport {
    pub fn to_csv(&self) -> String {
        let cell = |v: Option<f64>| v.map(|x| format!("{x:.12e}")).unwrap_or_default();
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{:.12e},{:.12e},{},{},{}\n",
                r.k,
                r.dim,
                cell(r.dirac_defect),
                cell(r.jordan_defect),
                cell(r.product_defect),
                cell(r.norm_gap),
                cell(r.equivariance_defect),
                r.normalization_residual,
                r.gilmore_residual,
                cell(r.duffield_gap),
                r.runtime_ms,
                r.valid
            ));
        }
        out
    }

    pub fn write(&self, dir: &Path, stem: &str) -> Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join(format!("{stem}.csv")), self.to_csv())?;
        fs::write(dir.join(format!("{stem}.json")), serde_json::to_string_pretty(self)?)?;
        Ok(())
    }

    /// Exit-code contract: all rows valid and no declined mandatory fits.
    pub fn all_valid(&self) -> bool {
        self.rows.iter().all(|r| r.valid)
    }
}

fn cache_path(dir: &Path, cfg: &ExperimentConfig, k: u64) -> PathBuf {
    let labels: Vec<String> = cfg.lambda.iter().map(|m| m.to_string()).collect();
    dir.join(format!(
        "irrep-{}{}-l{}-k{}.json",
        cfg.group.series,
        cfg.group.rank,
        labels.join("_"),
        k
    ))
}

/// Builds (or loads from the cache directory) the irrep at level k.
pub fn cached_irrep(
    cw: &CartanWeylBasis,
    cfg: &ExperimentConfig,
    k: u64,
    cache_dir: Option<&Path>,
) -> Result<Irrep> {
    if let Some(dir) = cache_dir {
        let path = cache_path(dir, cfg, k);
        if path.exists() {
            let bundle: IrrepBundle = serde_json::from_str(&fs::read_to_string(&path)?)?;
            return Irrep::from_bundle(&bundle);
        }
        let rep = build_irrep(cw, &cfg.weight(), k)?;
        fs::create_dir_all(dir)?;
        fs::write(&path, serde_json::to_string(&rep.to_bundle()?)?)?;
        return Ok(rep);
    }
    build_irrep(cw, &cfg.weight(), k)
}

fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> CVec {
    use rand::Rng;
    use rand_distr::StandardNormal;
    let v = CVec::from_fn(d, |_, _| {
        num_complex::Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let n = v.norm();
    v / num_complex::Complex64::new(n, 0.0)
}

/// Runs the full k-sweep of an experiment and assembles the defect report.
pub fn run_sweep(cfg: &ExperimentConfig, cache_dir: Option<&Path>) -> Result<DefectReport> {
    cfg.validate()?;
    let rs = build_root_system(cfg.group.series.chars().next().unwrap(), cfg.group.rank)?;
    let cw = build_cartan_weyl(&rs);
    let lambda = cfg.weight();
    let sign = cfg.sign()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let specs: Result<Vec<OrbitFunction>> =
        cfg.functions.iter().map(|s| function_from_spec(&cw, s)).collect();
    let specs = specs?;
    let pair = if specs.len() >= 2 {
        Some((specs[0].clone(), specs[1].clone()))
    } else if specs.is_empty() {
        None
    } else {
        let (_, y) = default_function_pair(&cw);
        Some((specs[0].clone(), y))
    };

    let k_max = *cfg.k_values.last().unwrap();
    let f_degree = pair
        .as_ref()
        .map(|(f, g)| f.degree() + g.degree())
        .unwrap_or(0)
        .max(2)
        .max(cfg.quadrature.order.unwrap_or(0));
    let rule = build_quadrature(&cw, &lambda, k_max, f_degree)?;

    let rep_1 = cached_irrep(&cw, cfg, 1, cache_dir)?;
    // Duffield test function: a degree-2 polynomial lift, with its
    // G_lambda-average (= value at the base point, since lifts are constant
    // on the stabilizer).
    let duffield_f = pair.as_ref().map(|(f, _)| {
        OrbitFunction::Sum(vec![
            (1.0, OrbitFunction::Constant(1.0)),
            (1.0, f.clone()),
            (1.0, f.product(f).expect("monomial product")),
        ])
    });
    let stab_rule = stabilizer_quadrature(&cw, &lambda, 4 * (f_degree as usize + 1))?;

    let mut self_test_defect = 0.0f64;
    let mut rows = Vec::new();
    for &k in &cfg.k_values {
        let t0 = Instant::now();
        let rep = cached_irrep(&cw, cfg, k, cache_dir)?;
        let report = verify_irrep(&cw, &rep);
        if !report.dimension_match || report.max_residual() > 1e-8 {
            return Err(Error::Numerical(format!(
                "irrep verification failed at k={k}: max residual {:.3e}",
                report.max_residual()
            )));
        }
        let st = quad::self_test(
            &cw,
            &rep,
            &rule,
            &random_unit(&mut rng, rep.dim),
            &random_unit(&mut rng, rep.dim),
            1e-8,
        )?;
        self_test_defect = self_test_defect.max(st);

        // Normalization residual over random states.
        let norm_op = coherent::normalization_operator(&cw, &rep, &rule)?;
        let mut norm_res = 0.0f64;
        for _ in 0..5 {
            let psi = random_unit(&mut rng, rep.dim);
            let v = psi.dotc(&(&norm_op * &psi)).re;
            norm_res = norm_res.max((v - 1.0).abs());
        }
        // Gilmore residual over random elements.
        let mut gil = 0.0f64;
        for _ in 0..10 {
            let x = group::haar_random(&cw, &mut rng)?;
            gil = gil.max(coherent::gilmore_check(&cw, &rep, &rep_1, &x)?);
        }

        let (mut dirac, mut jordan, mut prod, mut gap, mut equiv, mut duff) =
            (None, None, None, None, None, None);
        if let Some((f, g)) = &pair {
            // One quantization per distinct function; the defects share them.
            let qf = berezin::quantize(&cw, &rep, f, &rule)?;
            let qg = berezin::quantize(&cw, &rep, g, &rule)?.matrix;
            let br = berezin::poisson_bracket_function(&cw, &lambda, f, g, &rule, sign)?;
            let qbr = berezin::quantize(&cw, &rep, &br, &rule)?.matrix;
            let qfg = berezin::quantize(&cw, &rep, &f.product(g)?, &rule)?.matrix;
            dirac = Some(berezin::dirac_defect_ops(&qf.matrix, &qg, &qbr, k));
            jordan = Some(berezin::jordan_defect_ops(&qf.matrix, &qg, &qfg));
            prod = Some(berezin::product_defect_ops(&qf.matrix, &qg, &qfg));
            gap = Some(berezin::sup_norm(&cw, &lambda, f, &mut rng)? - qf.op_norm());
            let mut e = 0.0f64;
            for _ in 0..5 {
                let x = group::haar_random(&cw, &mut rng)?;
                e = e.max(berezin::equivariance_defect_ops(&cw, &rep, f, &qf.matrix, &x, &rule)?);
            }
            equiv = Some(e);
            let fd = duffield_f.as_ref().unwrap();
            let lift = |x: &crate::group::GroupElement| fd.lift(&cw, &lambda, x);
            let (mu, avg) = coherent::duffield_concentration(
                &cw, &rep_1, k, rep.dim as u64, &rule, &stab_rule, &lift,
            )?;
            duff = Some((mu - avg).abs());
        }
        rows.push(DefectRow {
            k,
            dim: rep.dim as u64,
            dirac_defect: dirac,
            jordan_defect: jordan,
            product_defect: prod,
            norm_gap: gap,
            equivariance_defect: equiv,
            normalization_residual: norm_res,
            gilmore_residual: gil,
            duffield_gap: duff,
            runtime_ms: t0.elapsed().as_millis(),
            valid: norm_res < 1e-6,
        });
    }

    // Slope fits over k >= 4 (the asymptotic statements need the
    // preasymptotic points excluded).
    let mut fits = BTreeMap::new();
    let metrics: [(&str, fn(&DefectRow) -> Option<f64>); 5] = [
        ("dirac_defect", |r| r.dirac_defect),
        ("jordan_defect", |r| r.jordan_defect),
        ("product_defect", |r| r.product_defect),
        ("norm_gap", |r| r.norm_gap),
        ("duffield_gap", |r| r.duffield_gap),
    ];
    for (name, get) in metrics {
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.k >= 4)
            .filter_map(|r| get(r).map(|v| (r.k as f64, v)))
            .collect();
        if pts.len() >= 3 {
            fits.insert(name.to_string(), fit_slope(&pts)?);
        }
    }

    Ok(DefectReport {
        schema_version: SCHEMA_VERSION,
        sign_convention: cfg.sign_convention.clone(),
        quadrature_scheme: rule.scheme.clone(),
        quadrature_self_test: self_test_defect,
        rows,
        fits,
    })
}

#[derive(Debug, Serialize)]
pub struct XvalRow {
    pub k: u64,
    pub dim: u64,
    pub samples: usize,
    pub max_deviation: f64,
    pub max_sigma_ratio: f64,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct XvalReport {
    pub rows: Vec<XvalRow>,
}

/// Recomputes Q(f) by brute-force Monte Carlo Haar integration and compares
/// entrywise against the quadrature path within 5 sigma.
pub fn cross_validate(cfg: &ExperimentConfig, samples: usize) -> Result<XvalReport> {
    cfg.validate()?;
    let rs = build_root_system(cfg.group.series.chars().next().unwrap(), cfg.group.rank)?;
    let cw = build_cartan_weyl(&rs);
    let lambda = cfg.weight();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let f = match cfg.functions.first() {
        Some(s) => function_from_spec(&cw, s)?,
        None => default_function_pair(&cw).0,
    };
    let mut rows = Vec::new();
    for &k in &cfg.k_values {
        if k > 4 {
            continue;
        }
        let rep = build_irrep(&cw, &lambda, k)?;
        if rep.dim > 16 {
            continue;
        }
        let rule = build_quadrature(&cw, &lambda, k, f.degree().max(1))?;
        let q = berezin::quantize(&cw, &rep, &f, &rule)?.matrix;
        let d = rep.dim;
        let psi = rep.hw_vector();
        let base = base_point(&cw, &lambda);
        let mut mean = crate::lie::CMat::zeros(d, d);
        let mut m2 = nalgebra::DMatrix::<f64>::zeros(d, d);
        for _ in 0..samples {
            let x = group::haar_random(&cw, &mut rng)?;
            let fv = f.eval(&crate::orbit::coadjoint_act(&cw, &x, &base))?;
            let v = rep.apply_group(&cw, &x, &psi);
            let term = (&v * v.adjoint()) * num_complex::Complex64::new(fv, 0.0);
            for i in 0..d {
                for j in 0..d {
                    m2[(i, j)] += term[(i, j)].norm_sqr();
                }
            }
            mean += term;
        }
        let n = samples as f64;
        mean /= num_complex::Complex64::new(n, 0.0);
        let q_mc = &mean * num_complex::Complex64::new(d as f64, 0.0);
        let mut max_dev = 0.0f64;
        let mut max_ratio = 0.0f64;
        let mut pass = true;
        for i in 0..d {
            for j in 0..d {
                let var = (m2[(i, j)] / n - mean[(i, j)].norm_sqr()).max(0.0);
                let sigma = d as f64 * (var / n).sqrt();
                let dev = (q_mc[(i, j)] - q[(i, j)]).norm();
                max_dev = max_dev.max(dev);
                let ratio = dev / (sigma + 1e-12);
                max_ratio = max_ratio.max(ratio);
                if dev > 5.0 * sigma + 1e-9 {
                    pass = false;
                }
            }
        }
        rows.push(XvalRow {
            k,
            dim: d as u64,
            samples,
            max_deviation: max_dev,
            max_sigma_ratio: max_ratio,
            pass,
        });
    }
    Ok(XvalReport { rows })
}

/// Dimension-growth table: (k, d_{k lambda}) plus the fitted log-log slope.
pub fn dims_table(cfg: &ExperimentConfig) -> Result<(Vec<(u64, u64)>, FitResult)> {
    cfg.validate()?;
    let rs = build_root_system(cfg.group.series.chars().next().unwrap(), cfg.group.rank)?;
    let lambda = cfg.weight();
    let table: Result<Vec<(u64, u64)>> = cfg
        .k_values
        .iter()
        .map(|&k| Ok((k, crate::lie::weyl_dimension(&rs, &lambda, k)?)))
        .collect();
    let table = table?;
    let pts: Vec<(f64, f64)> = table.iter().map(|&(k, d)| (k as f64, d as f64)).collect();
    let fit = fit_slope(&pts)?;
    Ok((table, fit))
}
