#pragma once

#include <algorithm>
#include <vector>

namespace sigmasa {

/// Maximum bipartite matching (Kuhn's augmenting paths).
///
/// adj[r] lists candidate columns for row r. Returns col_of_row with -1 for
/// unmatched rows. Deterministic: rows are processed in order and adjacency
/// order is respected, so equal inputs give equal matchings.
inline std::vector<int> max_bipartite_matching(int n_rows, int n_cols,
                                               const std::vector<std::vector<int>>& adj) {
    std::vector<int> col_of_row(n_rows, -1), row_of_col(n_cols, -1);
    std::vector<char> visited(n_cols, 0);

    // Iterative DFS over alternating paths; a frame holds (row, next adj index).
    // The stack always holds the current alternating path, so on reaching a
    // free column it can be flipped in place: each matched row's old column is
    // the column through which it entered the path.
    struct Frame {
        int row;
        size_t next;
    };
    std::vector<Frame> stack;

    for (int start = 0; start < n_rows; ++start) {
        std::fill(visited.begin(), visited.end(), 0);
        stack.assign(1, {start, 0});
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next >= adj[f.row].size()) {
                stack.pop_back();
                continue;
            }
            int c = adj[f.row][f.next++];
            if (visited[c]) continue;
            visited[c] = 1;
            if (row_of_col[c] == -1) {
                int col = c;
                for (size_t lvl = stack.size(); lvl-- > 0;) {
                    int r = stack[lvl].row;
                    int prev = col_of_row[r];
                    col_of_row[r] = col;
                    row_of_col[col] = r;
                    col = prev;
                }
                break;
            }
            stack.push_back({row_of_col[c], 0});
        }
    }
    return col_of_row;
}

inline int matching_size(const std::vector<int>& col_of_row) {
    int k = 0;
    for (int c : col_of_row)
        if (c >= 0) ++k;
    return k;
}

} // namespace sigmasa
