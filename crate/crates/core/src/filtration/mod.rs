pub mod level;
pub mod oracle;
pub mod kernel_exactness;
pub mod theta;

pub use level::{filf_level, in_filf, in_flat_fil, naive_level, ord_p, FilDecomposition};
pub use oracle::{brute_force_filf_level, OracleBounds};
pub use kernel_exactness::{kernel_map, verify_prop41, Prop41Report};
pub use theta::{delta, flat_filf_min, theta_bar, DBarElement};
