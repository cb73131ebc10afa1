//! JSON and SVG serialization of complexes. Rationals are written as "p/q" strings.

use crate::complex::{PolyComplex, WeightedComplex};
use crate::error::{Error, Result};
use crate::lp::Constraint;
use crate::polyhedron::Polyhedron;
use crate::scalar::{fmt_q, q, q_to_f64, q_string, qvec_string, Q};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConstraintJson {
    #[serde(with = "qvec_string")]
    pub a: Vec<Q>,
    #[serde(with = "q_string")]
    pub b: Q,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CellJson {
    pub dim: usize,
    #[serde(default)]
    pub equations: Vec<ConstraintJson>,
    #[serde(default)]
    pub inequalities: Vec<ConstraintJson>,
    #[serde(default, with = "qvec_string")]
    pub relint: Vec<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<u64>,
    /// Indices of this cell's facets in the cell list.
    #[serde(default)]
    pub facets: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexJson {
    pub ambient_dim: usize,
    pub dim: i64,
    #[serde(default)]
    pub weighted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub cells: Vec<CellJson>,
    /// Indices of the maximal cells.
    #[serde(default)]
    pub maximal: Vec<usize>,
}

fn cj(cs: &[Constraint]) -> Vec<ConstraintJson> {
    cs.iter().map(|(a, b)| ConstraintJson { a: a.clone(), b: b.clone() }).collect()
}

fn cell_json(c: &Polyhedron, weight: Option<u64>, facets: Vec<usize>) -> CellJson {
    CellJson {
        dim: c.dim(),
        equations: cj(c.equations()),
        inequalities: cj(c.inequalities()),
        relint: c.relint_point().to_vec(),
        weight,
        facets,
    }
}

pub fn complex_to_json(c: &PolyComplex) -> ComplexJson {
    let inc = c.facet_incidence();
    let cells: Vec<CellJson> = c.cells().iter().zip(inc).map(|(x, f)| cell_json(x, None, f)).collect();
    let maximal = c.maximal_cells().iter().map(|m| c.cells().iter().position(|x| x == *m).unwrap()).collect();
    ComplexJson { ambient_dim: c.ambient_dim(), dim: c.dim(), weighted: false, label: None, cells, maximal }
}

pub fn weighted_to_json(w: &WeightedComplex) -> ComplexJson {
    let c = w.complex();
    let mut j = complex_to_json(&c);
    j.weighted = true;
    j.dim = w.dim() as i64;
    for (k, cell) in c.cells().iter().enumerate() {
        j.cells[k].weight = w.weight_of(cell);
    }
    j.maximal = (0..c.cells().len()).filter(|&k| j.cells[k].weight.is_some()).collect();
    j
}

fn polyhedron_from(n: usize, c: &CellJson) -> Result<Polyhedron> {
    let back = |v: &[ConstraintJson]| -> Result<Vec<Constraint>> {
        v.iter()
            .map(|x| if x.a.len() == n { Ok((x.a.clone(), x.b.clone())) } else { Err(Error::LengthMismatch { expected: n, got: x.a.len() }) })
            .collect()
    };
    Polyhedron::new(n, back(&c.inequalities)?, back(&c.equations)?).ok_or_else(|| Error::Invalid("empty cell".into()))
}

pub fn complex_from_json(j: &ComplexJson) -> Result<PolyComplex> {
    let cells: Vec<Polyhedron> = j.cells.iter().map(|c| polyhedron_from(j.ambient_dim, c)).collect::<Result<_>>()?;
    Ok(PolyComplex::from_cells(j.ambient_dim, cells))
}

/// Reads the weighted cells; cells without a weight are faces and are ignored.
pub fn weighted_from_json(j: &ComplexJson) -> Result<WeightedComplex> {
    let mut cells = Vec::new();
    for c in &j.cells {
        if let Some(m) = c.weight {
            cells.push((polyhedron_from(j.ambient_dim, c)?, m));
        }
    }
    if cells.is_empty() && j.dim < 0 {
        return WeightedComplex::new(j.ambient_dim, 0, vec![]);
    }
    let dim = cells.first().map_or(j.dim.max(0) as usize, |(c, _)| c.dim());
    WeightedComplex::new(j.ambient_dim, dim, cells)
}

/// Vertices of a bounded polyhedron of dimension ≤ 2 in ℝ², in counterclockwise order.
fn vertices_2d(p: &Polyhedron) -> Vec<(f64, f64)> {
    let lines: Vec<&Constraint> = p.equations().iter().chain(p.inequalities()).collect();
    let mut pts: Vec<Vec<Q>> = Vec::new();
    if p.dim() == 0 {
        pts.push(p.relint_point().to_vec());
    }
    for (i, (a, b)) in lines.iter().enumerate() {
        for (c, d) in &lines[i + 1..] {
            let det = &a[0] * &c[1] - &a[1] * &c[0];
            if det == q(0) {
                continue;
            }
            let x = (b * &c[1] - &a[1] * d) / &det;
            let y = (&a[0] * d - b * &c[0]) / &det;
            let v = vec![x, y];
            if p.contains(&v) && !pts.contains(&v) {
                pts.push(v);
            }
        }
    }
    let f: Vec<(f64, f64)> = pts.iter().map(|v| (q_to_f64(&v[0]), q_to_f64(&v[1]))).collect();
    let (cx, cy) = f.iter().fold((0.0, 0.0), |(x, y), (a, b)| (x + a, y + b));
    let k = f.len().max(1) as f64;
    let (cx, cy) = (cx / k, cy / k);
    let mut f = f;
    f.sort_by(|p, r| (p.1 - cy).atan2(p.0 - cx).partial_cmp(&(r.1 - cy).atan2(r.0 - cx)).unwrap());
    f
}

/// A static SVG drawing of a complex in ℝ², clipped to a box around its bounded cells.
pub fn complex_to_svg(c: &PolyComplex, weights: Option<&WeightedComplex>) -> Result<String> {
    if c.ambient_dim() != 2 {
        return Err(Error::Unsupported(format!("SVG export needs a complex in ℝ², got ℝ^{}", c.ambient_dim())));
    }
    let mut lo = [q(-1), q(-1)];
    let mut hi = [q(1), q(1)];
    for v in c.cells_of_dim(0) {
        for k in 0..2 {
            let x = &v.relint_point()[k];
            if *x < lo[k] {
                lo[k] = x.clone();
            }
            if *x > hi[k] {
                hi[k] = x.clone();
            }
        }
    }
    let pad = q(2);
    let lo = [&lo[0] - &pad, &lo[1] - &pad];
    let hi = [&hi[0] + &pad, &hi[1] + &pad];
    let boxc: Vec<Constraint> = vec![
        (vec![q(1), q(0)], hi[0].clone()),
        (vec![q(-1), q(0)], -lo[0].clone()),
        (vec![q(0), q(1)], hi[1].clone()),
        (vec![q(0), q(-1)], -lo[1].clone()),
    ];
    let (x0, y0) = (q_to_f64(&lo[0]), q_to_f64(&lo[1]));
    let (w, h) = (q_to_f64(&hi[0]) - x0, q_to_f64(&hi[1]) - y0);
    let scale = 400.0 / w.max(h);
    let px = |p: (f64, f64)| ((p.0 - x0) * scale, (h - (p.1 - y0)) * scale);
    let mut s = String::new();
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.3} {:.3}\">",
        w * scale,
        h * scale,
        w * scale,
        h * scale
    )
    .unwrap();
    writeln!(s, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>").unwrap();
    for cell in c.cells() {
        let Some(clipped) = cell.with(&boxc, &[]) else { continue };
        if clipped.dim() != cell.dim() {
            continue;
        }
        let vs: Vec<(f64, f64)> = vertices_2d(&clipped).into_iter().map(px).collect();
        match cell.dim() {
            2 => {
                let pts: Vec<String> = vs.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
                writeln!(s, "<polygon points=\"{}\" fill=\"#dde6f0\" stroke=\"none\"/>", pts.join(" ")).unwrap();
            }
            1 if vs.len() >= 2 => {
                let (a, b) = (vs[0], vs[vs.len() - 1]);
                writeln!(s, "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"black\" stroke-width=\"2\"/>", a.0, a.1, b.0, b.1)
                    .unwrap();
                if let Some(m) = weights.and_then(|wc| wc.weight_of(cell)).filter(|&m| m > 1) {
                    let (mx, my) = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
                    writeln!(s, "<text x=\"{mx:.3}\" y=\"{my:.3}\" font-size=\"14\" fill=\"firebrick\">{m}</text>").unwrap();
                }
            }
            0 => {
                let (x, y) = vs[0];
                writeln!(s, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"4\" fill=\"black\"/>").unwrap();
                let p = cell.relint_point();
                writeln!(s, "<text x=\"{:.3}\" y=\"{:.3}\" font-size=\"11\">({}, {})</text>", x + 6.0, y - 6.0, fmt_q(&p[0]), fmt_q(&p[1]))
                    .unwrap();
            }
            _ => {}
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{hypersurface, weighted_equal};
    use crate::parse::parse_trop;
    use crate::poly::Ambient;

    #[test]
    fn json_round_trip() {
        let names = vec!["x".to_string(), "y".to_string()];
        let h = hypersurface(&parse_trop("min(x, y, 0)", &names, Ambient::Affine(2)).unwrap()).unwrap();
        let j = weighted_to_json(&h);
        let text = serde_json::to_string(&j).unwrap();
        let back: ComplexJson = serde_json::from_str(&text).unwrap();
        let w = weighted_from_json(&back).unwrap();
        assert!(weighted_equal(&w, &h));
        assert_eq!(w, h);
        let svg = complex_to_svg(&h.complex(), Some(&h)).unwrap();
        assert_eq!(svg.matches("<line").count(), 3);
    }
}
