//! Two- and three-dimensional partitions.

mod plane;
mod solid;

pub use plane::{partitions_of, partitions_up_to, Corners, Partition2D};
pub use solid::{enumerate_3d, Box3, Partition3D};
