//! Differential layer on polynomial charts: exterior calculus, the twisted
//! Courant bracket, Dirac structures, Schouten brackets, Lie algebroids and
//! generalized complex structure fields.

pub mod algebroid;
pub mod axioms;
pub mod calculus;
pub mod chart;
pub mod frames;
pub mod integrability;
pub mod schouten;
pub mod structure;

pub use algebroid::{lie_algebroid_differential, maurer_cartan, DiracPair, MaurerCartan};
pub use axioms::{derived_bracket_mismatch, jacobi_anomaly, violated_axioms, Axiom};
pub use calculus::{
    courant_bracket, d, d_h, derived_bracket, lie_bracket, lie_derivative, ClosedThreeForm,
    PolyForm, Section,
};
pub use chart::{default_samples, Chart, ComplexPair, Symbol};
pub use frames::{involutivity_tensor, is_involutive, DiracFrame, TensorComponent};
pub use integrability::{check_spinor_integrability, modular_vector_field, IntegrabilityVerdict};
pub use schouten::{is_poisson, schouten, Algebroid};
pub use structure::{
    circle_frame, deform_by_bivector, hamiltonian_symmetry, holomorphic_bivector,
    holomorphic_volume, nijenhuis_field, polynomial_inverse, spinor_type_at, Deformation, GcField,
    Hamiltonian, NijenhuisComponent,
};
