#pragma once

// Plain-text description of a simplicial map between finite complexes.
//
//   # comment
//   name doubling
//   source 6          vertex count, then one top simplex per line
//   0 1
//   ...
//   target 3
//   0 1
//   ...
//   map 0 1 2 0 1 2   image of every source vertex, in order
//   branch            optional, then one branch simplex per line
//   6
//
// A corpus is a directory of such files with extension .cov, read in
// lexicographic file name order.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "simplicial.hpp"

namespace bundlesig {

struct CoverSpec {
    std::string name;
    int source_vertices = -1;
    int target_vertices = -1;
    std::vector<Simplex> source_simplices;
    std::vector<Simplex> target_simplices;
    std::vector<int> vertex_map;
    std::vector<Simplex> branch;

    SimplicialMap map() const {
        return SimplicialMap(SimplicialComplex(source_vertices, source_simplices),
                             SimplicialComplex(target_vertices, target_simplices), vertex_map);
    }
};

inline CoverSpec parse_cover(std::istream& in, std::string default_name = "cover") {
    CoverSpec spec;
    spec.name = std::move(default_name);
    enum class Section { None, Source, Target, Branch } section = Section::None;
    bool have_map = false;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& what) {
        throw ParseError(spec.name + ":" + std::to_string(lineno) + ": " + what);
    };
    auto read_ints = [&](std::istringstream& ss) {
        std::vector<int> v;
        std::string tok;
        while (ss >> tok) {
            try {
                std::size_t used = 0;
                v.push_back(std::stoi(tok, &used));
                if (used != tok.size()) fail("bad integer '" + tok + "'");
            } catch (const std::logic_error&) {
                fail("bad integer '" + tok + "'");
            }
        }
        return v;
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string head;
        if (!(ss >> head)) continue;
        if (head == "name") {
            ss >> spec.name;
        } else if (head == "source" || head == "target") {
            auto v = read_ints(ss);
            if (v.size() != 1 || v[0] < 0) fail(head + " needs one vertex count");
            (head == "source" ? spec.source_vertices : spec.target_vertices) = v[0];
            section = head == "source" ? Section::Source : Section::Target;
        } else if (head == "map") {
            spec.vertex_map = read_ints(ss);
            have_map = true;
            section = Section::None;
        } else if (head == "branch") {
            section = Section::Branch;
        } else {
            std::istringstream whole(line);
            auto s = read_ints(whole);
            switch (section) {
                case Section::Source: spec.source_simplices.push_back(s); break;
                case Section::Target: spec.target_simplices.push_back(s); break;
                case Section::Branch: spec.branch.push_back(s); break;
                case Section::None: fail("simplex outside a section");
            }
        }
    }
    if (spec.source_vertices < 0 || spec.target_vertices < 0 || !have_map)
        throw ParseError(spec.name + ": needs source, target and map");
    return spec;
}

inline CoverSpec load_cover(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path.string());
    return parse_cover(in, path.stem().string());
}

/// All .cov files under `dir`; ConfigError if there are none.
inline std::vector<CoverSpec> load_corpus(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) throw ConfigError("corpus directory not found: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".cov") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ConfigError("empty corpus: " + dir.string());
    std::vector<CoverSpec> out;
    for (const auto& f : files) out.push_back(load_cover(f));
    return out;
}

}  // namespace bundlesig
