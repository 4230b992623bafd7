//! Input documents.
//!
//! Scalars and polynomials are strings in the grammar of [`crate::grammar`].
//! Forms and multivectors are lists of terms `{coeff, basis}`; a basis entry
//! is a 1-based coordinate index or a name (`x3`, `z1`, `z1b`), standing for
//! the differential or the coordinate vector field of that name.

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

/// Version tag accepted in the `schema` field.
pub const INPUT_SCHEMA: &str = "gcgeom-input/1";

/// A polynomial or scalar in the string grammar.
pub type Expr = String;

/// Row-major matrix of expressions.
pub type MatrixDoc = Vec<Vec<Expr>>;

/// Sum of terms; a form or a multivector depending on the field.
pub type FormDoc = Vec<TermDoc>;

#[derive(Serialize, Deserialize, JsonSchema, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: Expr,
    pub basis: Vec<BasisRef>,
}

#[derive(Serialize, Deserialize, JsonSchema, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum BasisRef {
    Index(usize),
    Name(String),
}

/// `X + ξ`, components in chart coordinates; omitted parts are zero.
#[derive(Serialize, Deserialize, JsonSchema, Clone, Debug, PartialEq, Eq, Default)]
#[serde(deny_unknown_fields)]
pub struct SectionDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<Expr>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covector: Option<Vec<Expr>>,
}

#[derive(Serialize, Deserialize, JsonSchema, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub name: String,
    pub re: String,
    pub im: String,
}

/// One of `dim`, `complex_space` or `coordinates` (with optional `complex`).
#[derive(Serialize, Deserialize, JsonSchema, Clone, Debug, PartialEq, Eq, Default)]
#[serde(deny_unknown_fields)]
pub struct ChartDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex_space: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<Vec<ComplexDoc>>,
}

/// A structure field; exactly one member is set.
#[derive(Serialize, Deserialize, JsonSchema, Clone, Debug, PartialEq, Eq, Default)]
#[serde(deny_unknown_fields)]
pub struct StructureDoc {
    /// The `2m x 2m` matrix of `J` acting on `(X, ξ)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixDoc>,
    /// Components `ω_ij` of a two-form with constant nonzero determinant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symplectic: Option<MatrixDoc>,
    /// The complex structure of the chart pairings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<bool>,
    /// Holomorphic bivector `β^{ab}` in the `∂/∂z` frame deforming the chart complex structure.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deformation: Option<MatrixDoc>,
}

/// Group element acting on `V ⊕ V*`.
#[derive(Serialize, Deserialize, JsonSchema, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TransformDoc {
    pub kind: TransformKind,
    pub matrix: MatrixDoc,
}

#[derive(Serialize, Deserialize, JsonSchema, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum TransformKind {
    B,
    Beta,
    Gl,
}

/// Product grid over the named coordinates; other coordinates are zero.
/// A holomorphic name takes complex values.
#[derive(Serialize, Deserialize, JsonSchema, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GridDoc {
    pub coordinates: Vec<String>,
    pub values: Vec<Expr>,
}

/// Affine subspace, graph or the whole chart; parameters are named `u1, u2, …`.
#[derive(Serialize, Deserialize, JsonSchema, Clone, Debug, PartialEq, Eq, Default)]
#[serde(deny_unknown_fields)]
pub struct SubmanifoldDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<Vec<Expr>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub directions: Option<MatrixDoc>,
    /// `x_{d+j} = g_j(u_1, …, u_d)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<Vec<Expr>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub whole: Option<bool>,
    /// Two-form `F` on the parameters; zero if omitted.
    #[serde(default, rename = "F", skip_serializing_if = "Option::is_none")]
    pub f: Option<MatrixDoc>,
}

/// A job document. Which fields are required depends on the command.
#[derive(Serialize, Deserialize, JsonSchema, Clone, Debug, PartialEq, Eq, Default)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub chart: ChartDoc,
    /// Closed twisting three-form.
    #[serde(default, rename = "H", skip_serializing_if = "Option::is_none")]
    pub h: Option<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<SectionDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other_basis: Option<Vec<SectionDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other_form: Option<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multivector: Option<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other_multivector: Option<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transform: Option<TransformDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<SectionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<Expr>>>,
    /// Antisymmetric `ε` on the frame of `L`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<MatrixDoc>,
    /// Frame of `L` for `maurer-cartan` and `pullback`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dirac: Option<Vec<SectionDoc>>,
    /// Transverse frame for `maurer-cartan`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement: Option<Vec<SectionDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volume: Option<FormDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log_density: Option<Expr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<Expr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub submanifold: Option<SubmanifoldDoc>,
    /// Grading degree for `grading`; all degrees if omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
}
