//! Distortion criteria, word-length accounting and certificates.

mod avila;
mod certificates;
mod growth;

pub use avila::{avila_bound, avila_enumerate, build_sigma, psi_index, psi_inverse, Profile, Sequence, SigmaSchedule, SigmaWitness};
pub use certificates::{
    a_bound_from_lambda, classical_certificates, diameter_upper_from_word_length, frag_certificates, ABound, CertificateSet, Classical, ClassicalKind, SurfaceKind,
};
pub use growth::{criterion_nlogn, criterion_sublinear, criterion_wn, GrowthClass, GrowthModel, Trend, Verdict, VerdictReport};
