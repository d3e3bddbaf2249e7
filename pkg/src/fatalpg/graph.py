"""Strongly connected components on plain adjacency callbacks."""


def strongly_connected_components(nodes, successors):
    """Iterative Tarjan.

    ``nodes`` is an iterable of hashable vertices and ``successors(v)``
    returns the neighbours of ``v`` (neighbours outside ``nodes`` are
    the caller's responsibility to filter).  Components are yielded in
    reverse topological order: a component is emitted only after every
    component reachable from it.
    """
    index = {}
    lowlink = {}
    on_stack = set()
    stack = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(successors(root)))]
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(successors(w))))
                    advanced = True
                    break
                if w in on_stack and index[w] < lowlink[v]:
                    lowlink[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if lowlink[v] < lowlink[parent]:
                    lowlink[parent] = lowlink[v]
            if lowlink[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    component.append(w)
                    if w == v:
                        break
                yield component
