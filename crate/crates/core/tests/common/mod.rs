#![allow(dead_code)]

use critcenter::Pyramid;

pub const PYRAMIDS: &[&[usize]] = &[
    &[1],
    &[2],
    &[3],
    &[1, 1],
    &[1, 2],
    &[2, 2],
    &[2, 3],
    &[1, 1, 1],
    &[1, 1, 2],
    &[1, 2, 3],
    &[2, 3, 4],
];

pub fn pyr(l: &[usize]) -> Pyramid {
    Pyramid::new(l.to_vec()).unwrap()
}

pub fn pyramids() -> Vec<Pyramid> {
    PYRAMIDS.iter().map(|l| pyr(l)).collect()
}

pub fn up_to(max_n: usize) -> Vec<Pyramid> {
    pyramids()
        .into_iter()
        .filter(|p| p.big_n() <= max_n)
        .collect()
}

pub fn partitions(total: usize, min_part: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in min_part..=total {
        for mut rest in partitions(total - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn all_pyramids(max_n: usize) -> Vec<Pyramid> {
    (1..=max_n)
        .flat_map(|n| partitions(n, 1))
        .map(|l| Pyramid::new(l).unwrap())
        .collect()
}
