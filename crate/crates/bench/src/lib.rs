//! Fixtures shared by the benchmarks.

use heisvc_core::chain::s3_join;
use heisvc_core::model::PointE;
use heisvc_core::IntMatrix;

/// Top boundary of the joined sphere, the largest matrix the engine meets
/// (18 x 9).
pub fn join_top_boundary() -> IntMatrix {
    let c = s3_join().expect("join builds");
    c.boundary(c.top_degree() as isize)
}

/// Middle boundary of the joined sphere (15 x 18).
pub fn join_middle_boundary() -> IntMatrix {
    s3_join().expect("join builds").boundary(2)
}

pub fn sample_w_point() -> PointE {
    heisvc_core::suites::sample_points().expect("samples build")[30]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_shapes() {
        assert_eq!(join_top_boundary().shape(), (18, 9));
        assert_eq!(join_middle_boundary().shape(), (15, 18));
        assert!(matches!(sample_w_point(), PointE::WPoint { .. }));
    }
}
