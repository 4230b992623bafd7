//! Conversion of documents into library objects.

use gcgeom::branes::SubmanifoldData;
use gcgeom::fields::calculus::{ClosedThreeForm, PolyForm, Section};
use gcgeom::fields::structure::{deform_by_bivector, GcField};
use gcgeom::fields::{Chart, ComplexPair, Symbol};
use gcgeom::spin::SpinGroupElement;
use gcgeom::{GenVector, Mat, MixedForm, Poly, Qi, Variance};

use crate::doc::{
    BasisRef, ChartDoc, FormDoc, GridDoc, MatrixDoc, SectionDoc, StructureDoc, SubmanifoldDoc,
    TransformDoc, TransformKind,
};
use crate::error::CliError;
use crate::grammar::parse_poly;

fn bad(path: &str, message: impl Into<String>) -> CliError {
    CliError::Input {
        path: path.to_string(),
        message: message.into(),
    }
}

/// Builds the chart of a document.
pub fn chart(doc: &ChartDoc) -> Result<Chart, CliError> {
    let given = [
        doc.dim.is_some(),
        doc.complex_space.is_some(),
        doc.coordinates.is_some(),
    ];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(bad(
            "$.chart",
            "give exactly one of dim, complex_space, coordinates",
        ));
    }
    if doc.complex.is_some() && doc.coordinates.is_none() {
        return Err(bad(
            "$.chart.complex",
            "complex pairings need explicit coordinates",
        ));
    }
    let built = if let Some(m) = doc.dim {
        Chart::new((1..=m).map(|i| format!("x{i}")).collect(), Vec::new())
    } else if let Some(n) = doc.complex_space {
        Chart::new((1..=2 * n).map(|i| format!("x{i}")).collect(), Vec::new())
            .map(|_| Chart::complex_space(n))
    } else {
        let names = doc.coordinates.clone().unwrap_or_default();
        let mut pairs = Vec::new();
        for (k, c) in doc.complex.iter().flatten().enumerate() {
            let find = |n: &str| {
                names.iter().position(|x| x == n).ok_or_else(|| {
                    bad(
                        &format!("$.chart.complex[{k}]"),
                        format!("unknown coordinate {n:?}"),
                    )
                })
            };
            pairs.push(ComplexPair {
                name: c.name.clone(),
                re: find(&c.re)?,
                im: find(&c.im)?,
            });
        }
        Chart::new(names, pairs)
    };
    built.map_err(CliError::Core)
}

/// Resolves names against a chart and converts documents.
pub struct Reader<'a> {
    pub chart: &'a Chart,
}

impl<'a> Reader<'a> {
    #[must_use]
    pub fn new(chart: &'a Chart) -> Self {
        Self { chart }
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn poly(&self, s: &str, path: &str) -> Result<Poly, CliError> {
        parse_poly(s, |name| {
            self.chart
                .symbol(name)
                .map(|sym| self.chart.coordinate(sym))
        })
        .map_err(|e| bad(path, e.to_string()))
    }

    pub fn scalar(&self, s: &str, path: &str) -> Result<Qi, CliError> {
        self.poly(s, path)?
            .as_constant()
            .ok_or_else(|| bad(path, format!("{s:?} is not a constant")))
    }

    fn basis_symbol(&self, b: &BasisRef, path: &str) -> Result<Symbol, CliError> {
        match b {
            BasisRef::Index(i) if (1..=self.dim()).contains(i) => Ok(Symbol::Real(i - 1)),
            BasisRef::Index(i) => Err(bad(path, format!("index {i} outside 1..={}", self.dim()))),
            BasisRef::Name(n) => self
                .chart
                .symbol(n)
                .ok_or_else(|| bad(path, format!("unknown coordinate {n:?}"))),
        }
    }

    /// Terms with basis entries read as differentials or as vector fields.
    pub fn terms(
        &self,
        doc: &FormDoc,
        variance: Variance,
        path: &str,
    ) -> Result<PolyForm, CliError> {
        let m = self.dim();
        let mut out = match variance {
            Variance::Form => MixedForm::zero(m),
            Variance::Multivector => MixedForm::zero_multivector(m),
        };
        for (k, t) in doc.iter().enumerate() {
            let tp = format!("{path}[{k}]");
            let coeff = self.poly(&t.coeff, &format!("{tp}.coeff"))?;
            let mut term = MixedForm::scalar(m, coeff).with_variance(variance);
            for (j, b) in t.basis.iter().enumerate().rev() {
                let sym = self.basis_symbol(b, &format!("{tp}.basis[{j}]"))?;
                let one = match variance {
                    Variance::Form => self.chart.differential(sym),
                    Variance::Multivector => self.chart.partial(sym),
                };
                term = term.wedge_one(&one);
            }
            out = out.plus(&term);
        }
        Ok(out)
    }

    pub fn form(&self, doc: &FormDoc, path: &str) -> Result<PolyForm, CliError> {
        self.terms(doc, Variance::Form, path)
    }

    pub fn multivector(&self, doc: &FormDoc, path: &str) -> Result<PolyForm, CliError> {
        self.terms(doc, Variance::Multivector, path)
    }

    pub fn constant_form(&self, doc: &FormDoc, path: &str) -> Result<MixedForm<Qi>, CliError> {
        let f = self.form(doc, path)?;
        let mut out = MixedForm::zero(self.dim());
        for (mask, c) in f.terms() {
            let c = c
                .as_constant()
                .ok_or_else(|| bad(path, "expected constant coefficients"))?;
            out.add_term(mask, c);
        }
        Ok(out)
    }

    pub fn three_form(
        &self,
        doc: Option<&FormDoc>,
        path: &str,
    ) -> Result<ClosedThreeForm, CliError> {
        match doc {
            None => Ok(ClosedThreeForm::zero(self.dim())),
            Some(d) => {
                let h = self.form(d, path)?;
                if h.terms().any(|(mask, _)| mask.count_ones() != 3) {
                    return Err(bad(path, "H must be a three-form"));
                }
                ClosedThreeForm::new(h).map_err(|e| bad(path, e.to_string()))
            }
        }
    }

    fn components(&self, v: &[String], path: &str) -> Result<Vec<Poly>, CliError> {
        if v.len() != self.dim() {
            return Err(bad(
                path,
                format!("expected {} components, found {}", self.dim(), v.len()),
            ));
        }
        v.iter()
            .enumerate()
            .map(|(i, s)| self.poly(s, &format!("{path}[{i}]")))
            .collect()
    }

    pub fn section(&self, doc: &SectionDoc, path: &str) -> Result<Section, CliError> {
        let m = self.dim();
        let part = |v: &Option<Vec<String>>, name: &str| match v {
            None => Ok(vec![Poly::zero(); m]),
            Some(v) => self.components(v, &format!("{path}.{name}")),
        };
        Ok(GenVector::new(
            part(&doc.vector, "vector")?,
            part(&doc.covector, "covector")?,
        ))
    }

    pub fn sections(&self, docs: &[SectionDoc], path: &str) -> Result<Vec<Section>, CliError> {
        docs.iter()
            .enumerate()
            .map(|(k, d)| self.section(d, &format!("{path}[{k}]")))
            .collect()
    }

    pub fn constant_sections(
        &self,
        docs: &[SectionDoc],
        path: &str,
    ) -> Result<Vec<GenVector<Qi>>, CliError> {
        let polys = self.sections(docs, path)?;
        polys
            .iter()
            .enumerate()
            .map(|(k, s)| {
                let all = s.vec.iter().chain(&s.covec);
                if all.clone().any(|p| p.as_constant().is_none()) {
                    return Err(bad(&format!("{path}[{k}]"), "expected constant components"));
                }
                Ok(s.eval(&[]))
            })
            .collect()
    }

    pub fn matrix(
        &self,
        doc: &MatrixDoc,
        rows: usize,
        cols: usize,
        path: &str,
    ) -> Result<Mat<Poly>, CliError> {
        if doc.len() != rows || doc.iter().any(|r| r.len() != cols) {
            return Err(bad(path, format!("expected a {rows}x{cols} matrix")));
        }
        let mut out = Vec::with_capacity(rows);
        for (i, r) in doc.iter().enumerate() {
            let row: Result<Vec<Poly>, _> = r
                .iter()
                .enumerate()
                .map(|(j, s)| self.poly(s, &format!("{path}[{i}][{j}]")))
                .collect();
            out.push(row?);
        }
        Ok(Mat::from_rows(out))
    }

    pub fn constant_matrix(
        &self,
        doc: &MatrixDoc,
        rows: usize,
        cols: usize,
        path: &str,
    ) -> Result<Mat<Qi>, CliError> {
        let m = self.matrix(doc, rows, cols, path)?;
        m.as_constant()
            .ok_or_else(|| bad(path, "expected constant entries"))
    }

    pub fn transform(&self, doc: &TransformDoc, path: &str) -> Result<SpinGroupElement, CliError> {
        let m = self.dim();
        let mat = self.constant_matrix(&doc.matrix, m, m, &format!("{path}.matrix"))?;
        let g = match doc.kind {
            TransformKind::B => SpinGroupElement::BField(mat),
            TransformKind::Beta => SpinGroupElement::Beta(mat),
            TransformKind::Gl => SpinGroupElement::Gl(mat),
        };
        g.check(m).map_err(|e| bad(path, e.to_string()))?;
        Ok(g)
    }

    pub fn structure(&self, doc: &StructureDoc, path: &str) -> Result<GcField, CliError> {
        let m = self.dim();
        let set = [
            doc.matrix.is_some(),
            doc.symplectic.is_some(),
            doc.complex.is_some(),
            doc.deformation.is_some(),
        ];
        if set.iter().filter(|&&s| s).count() != 1 {
            return Err(bad(
                path,
                "give exactly one of matrix, symplectic, complex, deformation",
            ));
        }
        let field = if let Some(j) = &doc.matrix {
            GcField::new(self.matrix(j, 2 * m, 2 * m, &format!("{path}.matrix"))?)
        } else if let Some(w) = &doc.symplectic {
            GcField::symplectic(&self.matrix(w, m, m, &format!("{path}.symplectic"))?)
        } else if doc.complex == Some(true) {
            GcField::complex(self.chart)
        } else if let Some(b) = &doc.deformation {
            let n = self.chart.complex_pairs().len();
            let holo = self.matrix(b, n, n, &format!("{path}.deformation"))?;
            deform_by_bivector(self.chart, &holo).map(|d| d.field)
        } else {
            return Err(bad(&format!("{path}.complex"), "must be true when given"));
        };
        field.map_err(|e| bad(path, e.to_string()))
    }

    pub fn point(&self, v: &[String], path: &str) -> Result<Vec<Qi>, CliError> {
        if v.len() != self.dim() {
            return Err(bad(path, format!("expected {} coordinates", self.dim())));
        }
        v.iter()
            .enumerate()
            .map(|(i, s)| {
                let x = self.scalar(s, &format!("{path}[{i}]"))?;
                if x.is_real() {
                    Ok(x)
                } else {
                    Err(bad(
                        &format!("{path}[{i}]"),
                        "real coordinates must be real",
                    ))
                }
            })
            .collect()
    }

    /// Points of a product grid.
    pub fn grid(&self, doc: &GridDoc, path: &str) -> Result<Vec<Vec<Qi>>, CliError> {
        let syms: Vec<Symbol> = doc
            .coordinates
            .iter()
            .enumerate()
            .map(|(k, n)| {
                self.basis_symbol(
                    &BasisRef::Name(n.clone()),
                    &format!("{path}.coordinates[{k}]"),
                )
            })
            .collect::<Result<_, _>>()?;
        let values: Vec<Qi> = doc
            .values
            .iter()
            .enumerate()
            .map(|(k, s)| self.scalar(s, &format!("{path}.values[{k}]")))
            .collect::<Result<_, _>>()?;
        let mut points = vec![vec![Qi::zero(); self.dim()]];
        for (k, sym) in syms.iter().enumerate() {
            let mut next = Vec::new();
            for p in &points {
                for v in &values {
                    let mut q = p.clone();
                    match *sym {
                        Symbol::Real(i) if v.is_real() => q[i] = v.clone(),
                        Symbol::Holomorphic(j) => {
                            let pair = &self.chart.complex_pairs()[j];
                            q[pair.re] = Qi::real(v.re.clone());
                            q[pair.im] = Qi::real(v.im.clone());
                        }
                        _ => return Err(bad(
                            &format!("{path}.coordinates[{k}]"),
                            "use real coordinates or holomorphic names with real or complex values",
                        )),
                    }
                    next.push(q);
                }
            }
            points = next;
        }
        Ok(points)
    }

    /// Submanifold with its parameter chart `u1, …, ud`.
    pub fn submanifold(
        &self,
        doc: &SubmanifoldDoc,
        h: ClosedThreeForm,
        path: &str,
    ) -> Result<SubmanifoldData, CliError> {
        let m = self.dim();
        let kinds = [
            doc.directions.is_some(),
            doc.graph.is_some(),
            doc.whole == Some(true),
        ];
        if kinds.iter().filter(|&&k| k).count() != 1 {
            return Err(bad(path, "give exactly one of directions, graph, whole"));
        }
        let d = if let Some(dirs) = &doc.directions {
            dirs.len()
        } else if let Some(g) = &doc.graph {
            m.checked_sub(g.len())
                .ok_or_else(|| bad(&format!("{path}.graph"), "too many graph functions"))?
        } else {
            m
        };
        let params = Chart::new((1..=d).map(|i| format!("u{i}")).collect(), Vec::new())
            .map_err(CliError::Core)?;
        let pr = Reader::new(&params);
        let f = match &doc.f {
            None => Mat::zeros(d, d),
            Some(f) => pr.matrix(f, d, d, &format!("{path}.F"))?,
        };
        let built = if let Some(dirs) = &doc.directions {
            let origin = match &doc.origin {
                None => vec![Qi::zero(); m],
                Some(o) => self.point(o, &format!("{path}.origin"))?,
            };
            let dirs: Vec<Vec<Qi>> = dirs
                .iter()
                .enumerate()
                .map(|(k, v)| self.point(v, &format!("{path}.directions[{k}]")))
                .collect::<Result<_, _>>()?;
            SubmanifoldData::affine(&origin, &dirs, f, h)
        } else if let Some(g) = &doc.graph {
            let g: Vec<Poly> = g
                .iter()
                .enumerate()
                .map(|(k, s)| pr.poly(s, &format!("{path}.graph[{k}]")))
                .collect::<Result<_, _>>()?;
            SubmanifoldData::graph(m, &g, f, h)
        } else {
            SubmanifoldData::whole(m, f, h)
        };
        built.map_err(|e| bad(path, e.to_string()))
    }
}
