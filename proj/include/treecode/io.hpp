#pragma once

#include <string>

#include "treecode/bijection.hpp"
#include "treecode/degree_tree.hpp"
#include "treecode/statistics.hpp"
#include "treecode/tree.hpp"

namespace treecode::io {

// JSON emitters build strings by hand in a fixed key order so equal objects
// always serialize to identical bytes (the pipeline contract depends on it).
std::string to_json(const RootedTree& t);
std::string to_json(const RootedForest& f);
std::string to_json(const MarkedTree& mt);
std::string to_json(const DegreeTree& t);
std::string to_json(const CodingSequence& cs);

// {"seed":...,"stream":...,"tree":{...}}
std::string sample_wrapper(std::uint64_t seed, std::uint64_t stream,
                           const std::string& tree_json);

// Parsers accept the matching to_json output and reasonable JSON variants
// (key order is free on input). A sample wrapper is unwrapped transparently.
RootedTree tree_from_json(const std::string& text);
RootedForest forest_from_json(const std::string& text);
MarkedTree marked_from_json(const std::string& text);
DegreeTree degree_tree_from_json(const std::string& text);
CodingSequence sequence_from_json(const std::string& text);

// Space-separated decimal labels, one sequence per line; empty line for the
// empty sequence.
std::string to_text(const Code& v);
Code code_from_text(const std::string& line);

// DOT: roots drawn with a double circle, degree-tree leaves appear as l<j>.
std::string to_dot(const RootedTree& t);
std::string to_dot(const RootedForest& f);
std::string to_dot(const DegreeTree& t);

// Edge list: a "root <r>" / "roots <r1> <r2> ..." header line, then one
// "parent child" line per edge.
std::string to_edgelist(const RootedTree& t);
std::string to_edgelist(const RootedForest& f);
std::string to_edgelist(const DegreeTree& t);

// CSV rows "value,count,prob" (exact distributions carry count 0).
std::string to_csv(const EmpiricalDist& dist);
std::string to_csv(const Pmf& pmf);

std::string to_json(const DominanceReport& rep);

}  // namespace treecode::io
