#pragma once

#include "algconn/graph.hpp"

namespace fixture {

// 22-vertex tree with max degree 3 in which deleting vertex 9 leaves
// subtrees of sizes 9, 6 and 6, and no vertex leaves two subtrees of size >= 7.
inline algconn::Graph unbalanced_tree22() {
  return algconn::Graph::from_edges(22, {{9, 1},   {9, 10},  {9, 16},  {1, 2},   {1, 6},   {2, 3},   {2, 5},
                                         {3, 4},   {6, 7},   {6, 0},   {7, 8},   {10, 11}, {10, 14}, {11, 12},
                                         {11, 13}, {14, 15}, {16, 17}, {16, 20}, {17, 18}, {17, 19}, {20, 21}});
}

}  // namespace fixture
