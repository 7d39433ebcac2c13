use proptest::prelude::*;
use vertexlab::partitions::{enumerate_3d, partitions_up_to, Partition2D, Partition3D};

fn partition() -> impl Strategy<Value = Partition2D> {
    proptest::collection::vec(1u32..6, 0..6).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition2D::new(v).unwrap()
    })
}

proptest! {
    #[test]
    fn conjugation_is_involutive(l in partition()) {
        prop_assert_eq!(l.conjugate().conjugate(), l.clone());
        prop_assert_eq!(l.conjugate().size(), l.size());
    }

    #[test]
    fn norm_counts_arms(l in partition()) {
        let s: i64 = l.arms_legs().iter().map(|(_, (a, _))| 2 * a + 1).sum();
        prop_assert_eq!(s as u64, l.norm2());
    }

    #[test]
    fn row_index_sum(l in partition()) {
        let s: u64 = l.boxes().map(|(b1, _)| b1 as u64).sum();
        let c = l.conjugate();
        prop_assert_eq!(2 * s, c.norm2() - l.size());
    }
}

// Independent count: plane partitions of n as weakly decreasing rows of
// weakly decreasing columns, built entry by entry.
fn plane_partition_count(n: u32) -> usize {
    fn go(grid: &mut Vec<Vec<u32>>, rest: u32, r: usize, c: usize, size: usize) -> usize {
        if rest == 0 {
            return 1;
        }
        if r >= size {
            return 0;
        }
        if c >= size {
            return go(grid, rest, r + 1, 0, size);
        }
        let up = if r > 0 { grid[r - 1][c] } else { rest };
        let left = if c > 0 { grid[r][c - 1] } else { rest };
        let max = up.min(left).min(rest);
        let mut total = 0;
        for v in 0..=max {
            grid[r][c] = v;
            if v == 0 {
                // rest of this row is zero; move to next row
                total += go(grid, rest, r + 1, 0, size);
            } else {
                total += go(grid, rest - v, r, c + 1, size);
            }
        }
        grid[r][c] = 0;
        total
    }
    let size = n.max(1) as usize;
    let mut grid = vec![vec![0; size]; size];
    go(&mut grid, n, 0, 0, size)
}

#[test]
fn plane_partition_oracle_counts() {
    let got: Vec<usize> = (0..=6).map(plane_partition_count).collect();
    assert_eq!(got, vec![1, 1, 3, 6, 13, 24, 48]);
}

#[test]
fn finite_enumeration_matches_brute_force() {
    let e = Partition2D::empty();
    let all = enumerate_3d([e.clone(), e.clone(), e.clone()], 6);
    for n in 0..=6 {
        let k = all.iter().filter(|p| p.renorm_volume() == n).count();
        assert_eq!(k, plane_partition_count(n as u32), "n = {}", n);
    }
}

#[test]
fn volume_is_minimal_plus_extra() {
    for l in partitions_up_to(2) {
        for m in partitions_up_to(1) {
            let legs = [l.clone(), m.clone(), Partition2D::of(&[1])];
            let base = Partition3D::minimal(legs.clone()).renorm_volume();
            for pi in enumerate_3d(legs.clone(), base + 3) {
                assert_eq!(pi.renorm_volume(), base + pi.extra().len() as i64);
                assert_eq!(&pi.asymptotics(), pi.legs());
                assert!(Partition3D::new(legs.clone(), pi.extra().to_vec()).is_ok());
            }
        }
    }
}

#[test]
fn enumeration_is_deterministic_and_unique() {
    let legs = [Partition2D::of(&[2]), Partition2D::of(&[1]), Partition2D::empty()];
    let a = enumerate_3d(legs.clone(), 3);
    let b = enumerate_3d(legs, 3);
    assert_eq!(a, b);
    let mut keys: Vec<_> = a.iter().map(|p| p.extra().to_vec()).collect();
    keys.sort();
    keys.dedup();
    assert_eq!(keys.len(), a.len());
}
