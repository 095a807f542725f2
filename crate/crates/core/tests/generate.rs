// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use edgecolour::catalog::graphs_up_to_iso;
use edgecolour::generate::gen_k_regular;
use edgecolour::recognition::are_isomorphic;
use edgecolour::Error;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn regular_graphs_are_regular_and_reproducible(n in 1usize..16, k in 0usize..8, seed in any::<u64>()) {
        let feasible = k < n && (n * k) % 2 == 0;
        match gen_k_regular(n, k, seed) {
            Ok(g) => {
                prop_assert!(feasible);
                prop_assert_eq!(g.vertex_count(), n);
                prop_assert!(g.is_regular_of_degree(k));
                prop_assert_eq!(gen_k_regular(n, k, seed).unwrap(), g);
            }
            Err(Error::InfeasibleDegreeSequence { .. }) => prop_assert!(!feasible),
            Err(other) => prop_assert!(false, "{}", other),
        }
    }
}

#[test]
fn catalogue_has_no_duplicates() {
    let levels = graphs_up_to_iso(6, false, |_| true);
    let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
    assert_eq!(counts, [1, 2, 4, 11, 34, 156]);
    for level in &levels[..5] {
        for (i, a) in level.iter().enumerate() {
            for b in &level[i + 1..] {
                assert!(!are_isomorphic(a, b));
            }
        }
    }
}
