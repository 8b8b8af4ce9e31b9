// Copyright 2026 The FCD Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

#include "fcd/analysis.hpp"
#include "fcd/errors.hpp"

namespace fcd {
namespace {

// Size-weighted mean of the distances from some cluster k to the two merged
// clusters. Equal inputs come back unchanged, without rounding.
double average_linkage(double to_left, std::size_t left_size, double to_right,
                       std::size_t right_size) {
  if (to_left == to_right) return to_left;
  const auto l = static_cast<double>(left_size);
  const auto r = static_cast<double>(right_size);
  return (to_left * l + to_right * r) / (l + r);
}

bool newick_needs_quotes(std::string_view label) {
  return label.empty() ||
         label.find_first_of(" \t\r\n()[]':;,_") != std::string_view::npos;
}

void write_newick_label(std::ostream& out, std::string_view label) {
  if (!newick_needs_quotes(label)) {
    out << label;
    return;
  }
  out << '\'';
  for (char c : label) {
    if (c == '\'') out << '\'';
    out << c;
  }
  out << '\'';
}

void write_newick(std::ostream& out, const Dendrogram& t, std::size_t node,
                  double parent_height, bool is_root) {
  const auto& n = t.nodes[node];
  if (t.is_leaf(node)) {
    write_newick_label(out, t.labels[node]);
  } else {
    out << '(';
    write_newick(out, t, static_cast<std::size_t>(n.left), n.height, false);
    out << ',';
    write_newick(out, t, static_cast<std::size_t>(n.right), n.height, false);
    out << ')';
  }
  if (!is_root) out << ':' << format_height(parent_height - n.height);
}

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string format_height(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s = buf;
  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

std::optional<TreeFormat> parse_tree_format(std::string_view name) noexcept {
  if (name == "newick") return TreeFormat::kNewick;
  if (name == "dot") return TreeFormat::kDot;
  return std::nullopt;
}

Dendrogram cluster(const DistanceMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) throw PreconditionError("cannot cluster an empty matrix");
  if (!m.is_symmetric()) {
    throw PreconditionError(
        "distance matrix is not symmetric; symmetrize it before clustering");
  }

  Dendrogram tree;
  tree.labels = m.labels();
  tree.nodes.resize(n);

  // Slot i holds the cluster whose first leaf is i; merged slots keep the
  // lower index.
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = m(i, j);
  }
  std::vector<int> slot_node(n);
  std::vector<bool> active(n, true);
  for (std::size_t i = 0; i < n; ++i) slot_node[i] = static_cast<int>(i);

  for (std::size_t step = 1; step < n; ++step) {
    std::size_t bi = 0, bj = 0;
    double best = std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        if (!found || d[i * n + j] < best) {
          best = d[i * n + j];
          bi = i;
          bj = j;
          found = true;
        }
      }
    }

    const auto& left = tree.nodes[slot_node[bi]];
    const auto& right = tree.nodes[slot_node[bj]];
    Dendrogram::Node merged;
    merged.left = slot_node[bi];
    merged.right = slot_node[bj];
    merged.height = std::max({best, left.height, right.height});
    merged.leaves = left.leaves + right.leaves;

    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == bi || k == bj) continue;
      const double v = average_linkage(d[k * n + bi], left.leaves,
                                       d[k * n + bj], right.leaves);
      d[k * n + bi] = v;
      d[bi * n + k] = v;
    }
    active[bj] = false;
    tree.nodes.push_back(merged);
    slot_node[bi] = static_cast<int>(tree.nodes.size() - 1);
  }
  return tree;
}

std::string export_tree(const Dendrogram& tree, TreeFormat format) {
  std::ostringstream out;
  if (format == TreeFormat::kNewick) {
    write_newick(out, tree, tree.root(), tree.nodes.back().height, true);
    out << ";\n";
    return out.str();
  }

  out << "digraph dendrogram {\n"
      << "  node [shape=box];\n";
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    if (tree.is_leaf(i)) {
      out << "  n" << i << " [label=\"" << dot_escape(tree.labels[i]) << "\"];\n";
    } else {
      out << "  n" << i << " [shape=ellipse, label=\""
          << format_height(tree.nodes[i].height) << "\"];\n";
    }
  }
  for (std::size_t i = tree.leaf_count(); i < tree.nodes.size(); ++i) {
    const auto& node = tree.nodes[i];
    for (const int child : {node.left, node.right}) {
      const double length = node.height - tree.nodes[child].height;
      out << "  n" << i << " -> n" << child << " [label=\""
          << format_height(length) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace fcd
