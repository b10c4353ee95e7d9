//! Strongly connected components of adjacency-list digraphs.

/// Tarjan's algorithm with an explicit stack. Components come out in reverse
/// topological order of the condensation.
pub fn strongly_connected_components(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = succ.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next_index = 0;
    // (node, position in its successor list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < succ[v].len() {
                let w = succ[v][*pos];
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    components.push(comp);
                }
            }
        }
    }
    components
}

/// Component id per node, plus whether each component carries a cycle
/// (more than one node, or a self-loop).
pub fn component_labels(succ: &[Vec<usize>]) -> (Vec<usize>, Vec<bool>) {
    let comps = strongly_connected_components(succ);
    let mut label = vec![0; succ.len()];
    for (c, comp) in comps.iter().enumerate() {
        for &v in comp {
            label[v] = c;
        }
    }
    let cyclic = comps
        .iter()
        .map(|comp| comp.len() > 1 || succ[comp[0]].contains(&comp[0]))
        .collect();
    (label, cyclic)
}

/// True when the digraph contains at least one cycle.
pub fn has_cycle(succ: &[Vec<usize>]) -> bool {
    let (_, cyclic) = component_labels(succ);
    cyclic.into_iter().any(|c| c)
}
