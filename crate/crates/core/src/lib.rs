//! Exact verification of metallic structures induced on the tangent bundle of a
//! P-Sasakian manifold by complete and horizontal lifts.
pub mod bundle;
pub mod harness;
pub mod manifold;
pub mod metallic;
pub mod paracontact;
pub mod symcore;
pub mod verify;

#[cfg(test)]
pub(crate) mod testutil;
