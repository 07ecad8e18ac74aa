//! Nef cones of moduli spaces of stable curves: test families, the
//! inequalities they impose, and exact extremal ray enumeration.

mod cone;
mod dd;
mod families;

pub use cone::{nef_cone, nef_cone_with_sources, ray_to_divisor, Cone};
pub use dd::{cone_of_rays_contains, extremal_rays_of, DoubleDescription};
pub use families::{
    basis_dim, family_instances, half_genus, nef_inequalities, FamilyInstance, NefInequality,
};
