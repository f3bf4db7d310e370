use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::graph::MetricGraph;

/// Named graphs. Contact sets: `K_n` all vertices, `S_d` the leaves,
/// `C_n` vertex 0, `path_n` both ends, `Q1`/`Q2` and the glued graphs the
/// four gluing vertices, the unit figure-eight and watermelon the central
/// vertex, the length-2 cycle and its figure-eight the two antipodal points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatalogId {
    Complete(usize),
    Star(usize),
    Cycle(usize),
    Path(usize),
    Q1,
    Q2,
    Gamma1,
    Gamma2,
    Gamma1p,
    Gamma2p,
    FigureEightUnit,
    WatermelonStickUnit,
    Fig6Cycle,
    Fig6Eight,
}

impl CatalogId {
    /// A representative list covering every variant.
    pub fn all() -> Vec<CatalogId> {
        let mut out = Vec::new();
        out.extend((2..=6).map(CatalogId::Complete));
        out.extend((1..=6).map(CatalogId::Star));
        out.extend((1..=6).map(CatalogId::Cycle));
        out.extend((2..=6).map(CatalogId::Path));
        out.extend([
            CatalogId::Q1,
            CatalogId::Q2,
            CatalogId::Gamma1,
            CatalogId::Gamma2,
            CatalogId::Gamma1p,
            CatalogId::Gamma2p,
            CatalogId::FigureEightUnit,
            CatalogId::WatermelonStickUnit,
            CatalogId::Fig6Cycle,
            CatalogId::Fig6Eight,
        ]);
        out
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogId::Complete(n) => write!(f, "K{n}"),
            CatalogId::Star(d) => write!(f, "S{d}"),
            CatalogId::Cycle(n) => write!(f, "C{n}"),
            CatalogId::Path(n) => write!(f, "path{n}"),
            CatalogId::Q1 => f.write_str("Q1"),
            CatalogId::Q2 => f.write_str("Q2"),
            CatalogId::Gamma1 => f.write_str("Gamma1"),
            CatalogId::Gamma2 => f.write_str("Gamma2"),
            CatalogId::Gamma1p => f.write_str("Gamma1p"),
            CatalogId::Gamma2p => f.write_str("Gamma2p"),
            CatalogId::FigureEightUnit => f.write_str("figure_eight_unit"),
            CatalogId::WatermelonStickUnit => f.write_str("watermelon_stick_unit"),
            CatalogId::Fig6Cycle => f.write_str("fig6_cycle"),
            CatalogId::Fig6Eight => f.write_str("fig6_eight"),
        }
    }
}

impl FromStr for CatalogId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownCatalogId(s.to_string());
        let sized = |rest: &str, lo: usize, hi: usize| -> Result<usize> {
            let n: usize = rest.trim_start_matches('_').parse().map_err(|_| unknown())?;
            if (lo..=hi).contains(&n) {
                Ok(n)
            } else {
                Err(unknown())
            }
        };
        let id = match s {
            "Q1" => CatalogId::Q1,
            "Q2" => CatalogId::Q2,
            "Gamma1" => CatalogId::Gamma1,
            "Gamma2" => CatalogId::Gamma2,
            "Gamma1p" => CatalogId::Gamma1p,
            "Gamma2p" => CatalogId::Gamma2p,
            "figure_eight_unit" => CatalogId::FigureEightUnit,
            "watermelon_stick_unit" => CatalogId::WatermelonStickUnit,
            "fig6_cycle" => CatalogId::Fig6Cycle,
            "fig6_eight" => CatalogId::Fig6Eight,
            _ => {
                if let Some(rest) = s.strip_prefix("path") {
                    CatalogId::Path(sized(rest, 2, 64)?)
                } else if let Some(rest) = s.strip_prefix('K') {
                    CatalogId::Complete(sized(rest, 2, 6)?)
                } else if let Some(rest) = s.strip_prefix('S') {
                    CatalogId::Star(sized(rest, 1, 6)?)
                } else if let Some(rest) = s.strip_prefix('C') {
                    CatalogId::Cycle(sized(rest, 1, 64)?)
                } else {
                    return Err(unknown());
                }
            }
        };
        Ok(id)
    }
}

pub(crate) fn complete(n: usize) -> MetricGraph {
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            e.push((i, j));
        }
    }
    MetricGraph::unit(n, &e, (0..n).collect()).expect("complete graph")
}

pub(crate) fn star(d: usize) -> MetricGraph {
    let e: Vec<(usize, usize)> = (1..=d).map(|i| (0, i)).collect();
    MetricGraph::unit(d + 1, &e, (1..=d).collect()).expect("star graph")
}

fn cycle(n: usize) -> MetricGraph {
    let e: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    MetricGraph::unit(n, &e, vec![0]).expect("cycle graph")
}

fn path(n: usize) -> MetricGraph {
    let e: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    MetricGraph::unit(n, &e, vec![0, n - 1]).expect("path graph")
}

fn q1() -> MetricGraph {
    MetricGraph::unit(6, &[(0, 4), (1, 4), (2, 5), (3, 5)], vec![0, 1, 2, 3]).expect("Q1")
}

fn q2() -> MetricGraph {
    MetricGraph::unit(6, &[(0, 5), (1, 4), (2, 4), (3, 4)], vec![0, 1, 2, 3]).expect("Q2")
}

const IDENTITY4: [(usize, usize); 4] = [(0, 0), (1, 1), (2, 2), (3, 3)];

fn fig6_cycle() -> MetricGraph {
    let two = BigRational::from_integer(2.into());
    MetricGraph::from_edges(2, &[(0, 1, two.clone()), (0, 1, two)], vec![0, 1]).expect("cycle of two edges")
}

fn fig6_eight() -> MetricGraph {
    let one = BigRational::from_integer(1.into());
    fig6_cycle().join_points(&[(0, one.clone()), (1, one)]).expect("midpoints of the cycle")
}

/// The graph for `id`, named after it.
pub fn catalog(id: CatalogId) -> MetricGraph {
    let g = match id {
        CatalogId::Complete(n) => complete(n),
        CatalogId::Star(d) => star(d),
        CatalogId::Cycle(n) => cycle(n),
        CatalogId::Path(n) => path(n),
        CatalogId::Q1 => q1(),
        CatalogId::Q2 => q2(),
        CatalogId::Gamma1 => complete(4).glue(&q1(), &IDENTITY4).expect("glue"),
        CatalogId::Gamma2 => complete(4).glue(&q2(), &IDENTITY4).expect("glue"),
        CatalogId::Gamma1p => star(4).glue(&q1(), &IDENTITY4).expect("glue"),
        CatalogId::Gamma2p => star(4).glue(&q2(), &IDENTITY4).expect("glue"),
        CatalogId::FigureEightUnit => {
            // two 4-cycles through vertex 0
            let e = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)];
            MetricGraph::unit(7, &e, vec![0]).expect("figure eight")
        }
        CatalogId::WatermelonStickUnit => {
            // three length-2 paths from 0 to 1, and a length-2 pendant at 0
            let e = [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1), (0, 5), (5, 6)];
            MetricGraph::unit(7, &e, vec![0]).expect("watermelon on a stick")
        }
        CatalogId::Fig6Cycle => fig6_cycle(),
        CatalogId::Fig6Eight => fig6_eight(),
    };
    g.with_name(id.to_string())
}

/// Parses a catalog name and builds the graph.
pub fn catalog_by_name(name: &str) -> Result<MetricGraph> {
    Ok(catalog(name.parse()?))
}
