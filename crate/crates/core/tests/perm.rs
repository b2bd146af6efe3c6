use std::collections::BTreeSet;

use mvp_fibres::Permutation;

/// Cycle detection on the undirected inversion graph by DFS.
fn has_cycle(perm: &Permutation) -> bool {
    let n = perm.len();
    let mut adj = vec![Vec::new(); n + 1];
    for (j, i) in perm.inversions().iter() {
        adj[j].push(i);
        adj[i].push(j);
    }
    let mut seen = vec![false; n + 1];
    for root in 1..=n {
        if seen[root] {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        seen[root] = true;
        while let Some((v, parent)) = stack.pop() {
            for &w in &adj[v] {
                if w == parent {
                    continue;
                }
                if seen[w] {
                    return true;
                }
                seen[w] = true;
                stack.push((w, v));
            }
        }
    }
    false
}

#[test]
fn acyclicity_agrees_with_dfs() {
    for n in 1..=7 {
        for perm in Permutation::all(n) {
            let acyclic = !has_cycle(&perm);
            assert_eq!(perm.inversion_graph_acyclic(), acyclic, "{perm}");
            assert_eq!(perm.inversion_graph_acyclic_by_search(), acyclic, "{perm}");
        }
    }
}

#[test]
fn left_inversions_partition_inversions() {
    for n in 1..=6 {
        for perm in Permutation::all(n) {
            let inv = perm.inversions();
            let mut from_left = BTreeSet::new();
            for i in 1..=n {
                for j in perm.left_inversions(i).unwrap() {
                    assert!(from_left.insert((j, i)));
                }
            }
            let all: BTreeSet<_> = inv.iter().collect();
            assert_eq!(from_left, all, "{perm}");
        }
    }
}

#[test]
fn decreasing_has_every_pair_inverted() {
    for n in 1..=10 {
        assert_eq!(
            Permutation::dec(n).unwrap().inversions().len(),
            n * (n - 1) / 2
        );
    }
}

#[test]
fn bipartite_inversions_are_complete_bipartite() {
    for m in 1..=5 {
        for n in 1..=5 {
            let perm = Permutation::bipart(m, n).unwrap();
            let got: BTreeSet<_> = perm.inversions().iter().collect();
            let want: BTreeSet<_> = (1..=m)
                .flat_map(|i| (1..=n).map(move |j| (i, m + j)))
                .collect();
            assert_eq!(got, want, "bipart({m},{n})");
        }
    }
}

#[test]
fn star_degenerations() {
    assert_eq!(Permutation::split_left(2, 1).unwrap().to_string(), "312");
    for m in 1..=5 {
        // bipart(m,1): vertex m+1 joined to every earlier vertex
        let inv: Vec<_> = Permutation::bipart(m, 1)
            .unwrap()
            .inversions()
            .iter()
            .collect();
        assert_eq!(inv, (1..=m).map(|i| (i, m + 1)).collect::<Vec<_>>());
    }
    for n in 1..=5 {
        // split_right(1,n) = dec(n+1)
        assert_eq!(
            Permutation::split_right(1, n).unwrap(),
            Permutation::dec(n + 1).unwrap()
        );
    }
}

#[test]
fn pattern_containment_by_definition() {
    let p321: Permutation = "321".parse().unwrap();
    let p3412: Permutation = "3412".parse().unwrap();
    for perm in Permutation::all(5) {
        let w = perm.word();
        let has321 =
            (0..5).any(|a| (a + 1..5).any(|b| (b + 1..5).any(|c| w[a] > w[b] && w[b] > w[c])));
        assert_eq!(perm.contains_pattern(&p321).unwrap(), has321, "{perm}");
        let has3412 = (0..5).any(|a| {
            (a + 1..5).any(|b| {
                (b + 1..5).any(|c| (c + 1..5).any(|d| w[c] < w[d] && w[d] < w[a] && w[a] < w[b]))
            })
        });
        assert_eq!(perm.contains_pattern(&p3412).unwrap(), has3412, "{perm}");
    }
}
