//! Table builders for each subcommand.

use fraclatt::chain::{
    characteristic_matrix_with_tol, dispersion, laplacian_matrix_with_tol, periodized_element,
    spectral_element, ChainSpec, CirculantMatrix, Method,
};
use fraclatt::diffusion::{evolve_spectral, EvolutionSpec, FieldOnRing};
use fraclatt::elements::{asymptotic_element, element_row, infinite_element};
use fraclatt::kernels::{
    periodic_kernel, periodic_kernel_extrapolated, regularized_kernel_infinite,
    riesz_kernel_infinite, PeriodicMethod,
};
use fraclatt::order::FractionalOrder;
use fraclatt::quadrature::{element_by_quadrature, nd_element_by_quadrature, QuadratureSpec};
use fraclatt::{Error, Result};

use crate::output::{Cell, Meta, Table};
use crate::{DiffuseInit, KernelMethodArg, MatrixMethodArg};

fn order(alpha: f64) -> Result<FractionalOrder<f64>> {
    FractionalOrder::new(alpha)
}

fn meta_f(key: &str, v: f64) -> (String, Cell) {
    (key.to_string(), Cell::Float(v))
}

fn meta_i(key: &str, v: i64) -> (String, Cell) {
    (key.to_string(), Cell::Int(v))
}

fn meta_s(key: &str, v: impl Into<String>) -> (String, Cell) {
    (key.to_string(), Cell::Text(v.into()))
}

/// `elements`: per offset p, the closed form, the recursion value, the
/// quadrature oracle, and the large-p asymptotic form (all times omega2).
pub fn elements(alpha: f64, pmax: usize, omega2: f64, tol: f64) -> Result<Table> {
    let o = order(alpha)?;
    // `!(x > 0)` also rejects NaN
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(omega2 > 0.0) {
        return Err(Error::InvalidInput("omega2 must be > 0".into()));
    }
    let qspec = QuadratureSpec::with_tol(tol);
    let recursion_row = element_row(&o, pmax);
    let mut rows = Vec::with_capacity(pmax + 1);
    for (p, &recur) in recursion_row.iter().enumerate() {
        let closed = infinite_element(&o, p as i64) * omega2;
        let recur = recur * omega2;
        let quad = element_by_quadrature(&o, p as i64, &qspec)? * omega2;
        let asym = if p == 0 {
            f64::NAN
        } else {
            asymptotic_element(&o, p as i64)? * omega2
        };
        rows.push(vec![
            Cell::Int(p as i64),
            Cell::Float(closed),
            Cell::Float(recur),
            Cell::Float(quad),
            Cell::Float(asym),
        ]);
    }
    Ok(Table {
        command: "elements",
        meta: vec![
            meta_f("alpha", alpha),
            meta_i("pmax", pmax as i64),
            meta_f("omega2", omega2),
            meta_f("tol", tol),
        ],
        columns: vec!["p", "closed_form", "recursion", "quadrature", "asymptotic"],
        rows,
    })
}

#[allow(clippy::too_many_arguments)]
pub fn matrix(
    alpha: f64,
    n: usize,
    h: f64,
    mu: f64,
    omega2: f64,
    method: MatrixMethodArg,
    laplacian: bool,
    full: bool,
    tol: f64,
) -> Result<Table> {
    let spec = ChainSpec::new(n, h, mu, omega2, order(alpha)?)?;
    let scale = if laplacian { -mu } else { 1.0 };
    let mut meta: Meta = vec![
        meta_f("alpha", alpha),
        meta_i("N", n as i64),
        meta_f("h", h),
        meta_f("mu", mu),
        meta_f("omega2", omega2),
        meta_s(
            "method",
            match method {
                MatrixMethodArg::Spectral => "spectral",
                MatrixMethodArg::Periodized => "periodized",
                MatrixMethodArg::Both => "both",
            },
        ),
        meta_s("matrix", if laplacian { "laplacian" } else { "characteristic" }),
        meta_f("tol", tol),
    ];

    if let MatrixMethodArg::Both = method {
        let mut rows = Vec::with_capacity(n);
        let mut worst = 0.0f64;
        for k in 0..n {
            let s = spectral_element(&spec, k)? * scale;
            let p = periodized_element(&spec, k, tol)? * scale;
            worst = worst.max((s - p).abs());
            rows.push(vec![
                Cell::Int(k as i64),
                Cell::Float(s),
                Cell::Float(p),
                Cell::Float((s - p).abs()),
            ]);
        }
        meta.push(meta_f("max_discrepancy", worst));
        return Ok(Table {
            command: "matrix",
            meta,
            columns: vec!["k", "spectral", "periodized", "abs_diff"],
            rows,
        });
    }

    let m: CirculantMatrix<f64> = {
        let method = match method {
            MatrixMethodArg::Spectral => Method::Spectral,
            MatrixMethodArg::Periodized => Method::Periodized,
            MatrixMethodArg::Both => unreachable!(),
        };
        if laplacian {
            laplacian_matrix_with_tol(&spec, method, tol)?
        } else {
            characteristic_matrix_with_tol(&spec, method, tol)?
        }
    };

    if full {
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                rows.push(vec![
                    Cell::Int(i as i64),
                    Cell::Int(j as i64),
                    Cell::Float(m.entry(i, j)),
                ]);
            }
        }
        Ok(Table { command: "matrix", meta, columns: vec!["i", "j", "value"], rows })
    } else {
        let rows = m
            .first_row()
            .iter()
            .enumerate()
            .map(|(k, &v)| vec![Cell::Int(k as i64), Cell::Float(v)])
            .collect();
        Ok(Table { command: "matrix", meta, columns: vec!["k", "value"], rows })
    }
}

/// `spectrum`: dispersion points (l, kappa_l, omega^2_alpha(kappa_l)).
pub fn spectrum(alpha: f64, n: usize, omega2: f64) -> Result<Table> {
    let spec = ChainSpec::new(n, 1.0, 1.0, omega2, order(alpha)?)?;
    let rows = (0..n)
        .map(|l| {
            let d = dispersion(&spec, l)?;
            Ok(vec![Cell::Int(l as i64), Cell::Float(d.kappa), Cell::Float(d.omega2)])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        command: "spectrum",
        meta: vec![meta_f("alpha", alpha), meta_i("N", n as i64), meta_f("omega2", omega2)],
        columns: vec!["l", "kappa", "omega2"],
        rows,
    })
}

pub fn kernel(
    alpha: f64,
    xs: &[f64],
    periodic: bool,
    l_period: Option<f64>,
    method: KernelMethodArg,
    epsilon: Option<f64>,
    extrapolate: bool,
) -> Result<Table> {
    let o = order(alpha)?;
    if xs.is_empty() {
        return Err(Error::InvalidInput("at least one --x value is required".into()));
    }
    let mut meta: Meta = vec![
        meta_f("alpha", alpha),
        meta_s("domain", if periodic { "periodic" } else { "infinite" }),
    ];
    let mut rows = Vec::with_capacity(xs.len());

    if periodic {
        let l = l_period.ok_or_else(|| Error::InvalidInput("--periodic requires --L".into()))?;
        meta.push(meta_f("L", l));
        let route = if extrapolate {
            meta.push(meta_s("method", "regularized-extrapolated"));
            None
        } else {
            let m = match method {
                KernelMethodArg::Zeta => PeriodicMethod::Zeta,
                KernelMethodArg::LatticeSum => PeriodicMethod::LatticeSum,
                KernelMethodArg::Regularized => {
                    let eps = epsilon.ok_or_else(|| {
                        Error::InvalidInput("--method regularized requires --epsilon".into())
                    })?;
                    meta.push(meta_f("epsilon", eps));
                    PeriodicMethod::Regularized(eps)
                }
            };
            if !matches!(m, PeriodicMethod::Regularized(_)) {
                meta.push(meta_s(
                    "method",
                    match method {
                        KernelMethodArg::Zeta => "zeta",
                        KernelMethodArg::LatticeSum => "lattice-sum",
                        KernelMethodArg::Regularized => unreachable!(),
                    },
                ));
            }
            Some(m)
        };
        for &x in xs {
            let v = match route {
                Some(m) => periodic_kernel(&o, l, x, m)?,
                None => periodic_kernel_extrapolated(&o, l, x, epsilon, 6)?,
            };
            rows.push(vec![Cell::Float(x), Cell::Float(v)]);
        }
    } else {
        match epsilon {
            Some(eps) => {
                meta.push(meta_s("method", "regularized"));
                meta.push(meta_f("epsilon", eps));
                for &x in xs {
                    rows.push(vec![
                        Cell::Float(x),
                        Cell::Float(regularized_kernel_infinite(&o, x, eps)?),
                    ]);
                }
            }
            None => {
                meta.push(meta_s("method", "hyper-singular"));
                for &x in xs {
                    rows.push(vec![Cell::Float(x), Cell::Float(riesz_kernel_infinite(&o, x)?)]);
                }
            }
        }
    }
    Ok(Table { command: "kernel", meta, columns: vec!["x", "value"], rows })
}

#[allow(clippy::too_many_arguments)]
pub fn diffuse(
    alpha: f64,
    n: usize,
    time: f64,
    mobility: f64,
    h: f64,
    mu: f64,
    omega2: f64,
    init: DiffuseInit,
    site: usize,
    mode: usize,
) -> Result<Table> {
    let spec = ChainSpec::new(n, h, mu, omega2, order(alpha)?)?;
    let u0 = match init {
        DiffuseInit::Delta => FieldOnRing::delta_spike(n, site)?,
        DiffuseInit::Uniform => FieldOnRing::uniform(n, 1.0)?,
        DiffuseInit::Cosine => FieldOnRing::cosine_mode(n, mode)?,
    };
    let ev = EvolutionSpec::new(spec, mobility, time)?;
    let ut = evolve_spectral(&u0, &ev)?;
    let rows = (0..n)
        .map(|p| {
            vec![
                Cell::Int(p as i64),
                Cell::Float(u0.values()[p]),
                Cell::Float(ut.values()[p]),
            ]
        })
        .collect();
    Ok(Table {
        command: "diffuse",
        meta: vec![
            meta_f("alpha", alpha),
            meta_i("N", n as i64),
            meta_f("h", h),
            meta_f("mu", mu),
            meta_f("omega2", omega2),
            meta_f("c", mobility),
            meta_f("t", time),
            meta_s(
                "init",
                match init {
                    DiffuseInit::Delta => format!("delta(site={site})"),
                    DiffuseInit::Uniform => "uniform".to_string(),
                    DiffuseInit::Cosine => format!("cosine(mode={mode})"),
                },
            ),
        ],
        columns: vec!["p", "u0", "ut"],
        rows,
    })
}

/// `nd-element`: cubic-lattice elements by tensorized quadrature, one row
/// per offset vector (up to three components).
pub fn nd_element(alpha: f64, offsets: &[Vec<i64>], tol: f64) -> Result<Table> {
    let o = order(alpha)?;
    if offsets.is_empty() {
        return Err(Error::InvalidInput("at least one --p vector is required".into()));
    }
    let n = offsets[0].len();
    if offsets.iter().any(|p| p.len() != n) {
        return Err(Error::InvalidInput("all --p vectors must share one dimension".into()));
    }
    let qspec = QuadratureSpec::with_tol(tol);
    let mut rows = Vec::with_capacity(offsets.len());
    for p in offsets {
        let v = nd_element_by_quadrature(&o, p, &qspec)?;
        let mut row: Vec<Cell> = (0..3)
            .map(|j| {
                p.get(j)
                    .map(|&c| Cell::Int(c))
                    .unwrap_or(Cell::Text(String::new()))
            })
            .collect();
        row.push(Cell::Float(v));
        rows.push(row);
    }
    Ok(Table {
        command: "nd-element",
        meta: vec![meta_f("alpha", alpha), meta_i("n", n as i64), meta_f("tol", tol)],
        columns: vec!["p1", "p2", "p3", "value"],
        rows,
    })
}
