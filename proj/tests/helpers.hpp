#pragma once

#include <string>
#include <vector>

#include "gcgs/rng.hpp"
#include "gcgs/snippet.hpp"
#include "gcgs/transform.hpp"

namespace testutil {

// Small random python functions with a mix of parameters, locals, loops and
// docstring assertions. Valid under the project parser by construction.
inline std::string random_python_snippet(gcgs::Rng& rng) {
  static const char* fnames[] = {"calc_total", "merge_items",  "scan_values",
                                 "fold_pairs", "trim_edges",   "rank_rows",
                                 "pack_bits",  "split_groups", "walk_nodes"};
  static const char* vnames[] = {"acc", "cur", "step", "bound", "left",
                                 "right", "probe", "tail", "head", "mark"};
  std::string fn = fnames[rng.below(std::size(fnames))];
  fn += "_" + std::to_string(rng.below(90) + 10);
  std::string p1 = vnames[rng.below(std::size(vnames))];
  std::string p2 = vnames[rng.below(std::size(vnames))];
  while (p2 == p1) p2 = vnames[rng.below(std::size(vnames))];
  std::string local = vnames[rng.below(std::size(vnames))];
  while (local == p1 || local == p2) local = vnames[rng.below(std::size(vnames))];

  std::string s = "def " + fn + "(" + p1 + ", " + p2 + "):\n";
  if (rng.below(2) == 0) {
    s += "    \"\"\"Combine inputs.\n\n    >>> " + fn + "(1, 2)\n    3\n    \"\"\"\n";
  }
  s += "    " + local + " = " + p1 + " + " + std::to_string(rng.below(10)) + "\n";
  switch (rng.below(3)) {
    case 0:
      s += "    for i in range(" + p2 + "):\n";
      s += "        " + local + " = " + local + " + i\n";
      break;
    case 1:
      s += "    if " + p1 + " > " + p2 + ":\n";
      s += "        " + local + " = " + local + " - " + p2 + "\n";
      break;
    default:
      s += "    " + local + " = " + local + " * " + p2 + "\n";
      break;
  }
  s += "    return " + local + "\n";
  return s;
}

inline std::vector<gcgs::CodeSnippet> random_corpus(std::uint64_t seed,
                                                    std::size_t n) {
  gcgs::Rng rng(seed);
  std::vector<gcgs::CodeSnippet> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(
        gcgs::CodeSnippet::parse(random_python_snippet(rng), gcgs::Language::python));
  return out;
}

inline std::vector<std::string> small_pool_names() {
  return {"tmp",  "buf",   "val",  "idx", "node",  "item",
          "data", "count", "size", "key", "entry", "token"};
}

}  // namespace testutil
