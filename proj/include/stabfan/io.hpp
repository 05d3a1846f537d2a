#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "../../vendor/json.hpp"
#include "algebra.hpp"
#include "candecomp.hpp"
#include "cone.hpp"
#include "einv.hpp"
#include "errors.hpp"
#include "kgrp.hpp"
#include "rat.hpp"
#include "rep.hpp"
#include "stability.hpp"

namespace stabfan {

// ordered_json keeps insertion order, so identical runs serialize to
// identical bytes
using Json = nlohmann::ordered_json;

// ---- quiver / algebra files ----
//
// {
//   "vertices": ["1", "2"],
//   "arrows": [{"name": "a", "src": "1", "tgt": "2"}],
//   "relations": [[{"coeff": 1, "path": ["a", "b"]}]],
//   "max_path_length": 6
// }
// src/tgt refer to vertices by name, relation paths to arrows by name.

inline QuiverSpec quiver_spec_from_json(const Json& j) {
  QuiverSpec s;
  if (!j.contains("vertices") || !j.contains("arrows"))
    throw BadInputFile("algebra file needs 'vertices' and 'arrows'");
  for (const auto& v : j.at("vertices")) s.vertices.push_back(v.get<std::string>());
  auto vertex_index = [&](const std::string& name) {
    for (int i = 0; i < s.n_vertices(); ++i)
      if (s.vertices[i] == name) return i;
    throw BadInputFile("unknown vertex name: " + name);
  };
  for (const auto& a : j.at("arrows"))
    s.arrows.push_back({a.at("name").get<std::string>(),
                        vertex_index(a.at("src").get<std::string>()),
                        vertex_index(a.at("tgt").get<std::string>())});
  if (j.contains("relations"))
    for (const auto& rel : j.at("relations")) {
      Relation r;
      for (const auto& term : rel) {
        RelTerm t;
        t.coeff = term.at("coeff").get<long long>();
        std::vector<std::string> names;
        for (const auto& an : term.at("path")) names.push_back(an.get<std::string>());
        t.path = arrows_by_name(s, names);
        r.push_back(t);
      }
      s.relations.push_back(r);
    }
  if (j.contains("max_path_length"))
    s.max_path_length = j.at("max_path_length").get<int>();
  return s;
}

inline Json quiver_spec_to_json(const QuiverSpec& s) {
  Json j;
  j["vertices"] = s.vertices;
  j["arrows"] = Json::array();
  for (const Arrow& a : s.arrows)
    j["arrows"].push_back({{"name", a.name},
                           {"src", s.vertices[a.src]},
                           {"tgt", s.vertices[a.tgt]}});
  j["relations"] = Json::array();
  for (const Relation& rel : s.relations) {
    Json jr = Json::array();
    for (const RelTerm& t : rel) {
      Json path = Json::array();
      for (int a : t.path) path.push_back(s.arrows[a].name);
      jr.push_back({{"coeff", t.coeff}, {"path", path}});
    }
    j["relations"].push_back(jr);
  }
  j["max_path_length"] = s.max_path_length;
  return j;
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInputFile("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw BadInputFile(path + ": " + e.what());
  }
  return j;
}

inline Algebra algebra_from_file(const std::string& path, std::uint64_t p) {
  return build_algebra(quiver_spec_from_json(load_json_file(path)), p);
}

// ---- module files ----
//
// { "dims": [3, 3], "arrows": {"a1": [[0,1,0],[0,0,1],[...]], ...} }
// matrix entries are integers reduced mod p; row index = source coordinate
// (right action by row vectors).

inline Rep rep_from_json(const Algebra& A, const Json& j) {
  Rep M = zero_rep(A);
  const auto& dims = j.at("dims");
  if (static_cast<int>(dims.size()) != A.n_vertices())
    throw BadInputFile("module dims length != number of vertices");
  for (int v = 0; v < A.n_vertices(); ++v) M.dims[v] = dims[v].get<int>();
  for (std::size_t a = 0; a < A.spec.arrows.size(); ++a) {
    const Arrow& ar = A.spec.arrows[a];
    FpMat m(M.dims[ar.src], M.dims[ar.tgt], A.p);
    if (j.contains("arrows") && j.at("arrows").contains(ar.name)) {
      const auto& rows = j.at("arrows").at(ar.name);
      if (static_cast<int>(rows.size()) != M.dims[ar.src])
        throw BadInputFile("matrix rows mismatch for arrow " + ar.name);
      for (int r = 0; r < M.dims[ar.src]; ++r) {
        if (static_cast<int>(rows[r].size()) != M.dims[ar.tgt])
          throw BadInputFile("matrix cols mismatch for arrow " + ar.name);
        for (int c = 0; c < M.dims[ar.tgt]; ++c)
          m(r, c) = fp::reduce(rows[r][c].get<long long>(), A.p);
      }
    }
    M.arr[a] = m;
  }
  if (!relations_vanish(M)) throw BadInputFile("module violates the relations");
  return M;
}

inline Json rep_to_json(const Rep& M) {
  const Algebra& A = *M.A;
  Json j;
  j["dims"] = M.dims;
  j["arrows"] = Json::object();
  for (std::size_t a = 0; a < A.spec.arrows.size(); ++a) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < M.arr[a].rows(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < M.arr[a].cols(); ++c)
        row.push_back(M.arr[a](r, c));
      rows.push_back(row);
    }
    j["arrows"][A.spec.arrows[a].name] = rows;
  }
  return j;
}

// ---- exact rationals and cones ----

inline Json rat_to_json(const Rat& r) {
  if (r.den() == 1) return Json(r.num());
  return Json(std::to_string(r.num()) + "/" + std::to_string(r.den()));
}

inline Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  std::string s = j.get<std::string>();
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(std::stoll(s));
  return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

inline Json ratvec_to_json(const RatVec& v) {
  Json j = Json::array();
  for (const Rat& x : v) j.push_back(rat_to_json(x));
  return j;
}

inline RatVec ratvec_from_json(const Json& j) {
  RatVec v;
  for (const auto& x : j) v.push_back(rat_from_json(x));
  return v;
}

inline Json ratvecs_to_json(const std::vector<RatVec>& vs) {
  Json j = Json::array();
  for (const auto& v : vs) j.push_back(ratvec_to_json(v));
  return j;
}

inline std::vector<RatVec> ratvecs_from_json(const Json& j) {
  std::vector<RatVec> vs;
  for (const auto& v : j) vs.push_back(ratvec_from_json(v));
  return vs;
}

inline Json cone_to_json(const ConeQ& c) {
  Json j;
  j["ambient"] = c.ambient;
  j["dim"] = c.dim();
  j["rays"] = ratvecs_to_json(c.rays);
  j["lineality"] = ratvecs_to_json(c.lineality);
  j["facets"] = ratvecs_to_json(c.facets);
  j["equations"] = ratvecs_to_json(c.equations);
  return j;
}

inline ConeQ cone_from_json(const Json& j) {
  ConeQ c;
  c.ambient = j.at("ambient").get<std::size_t>();
  c.rays = ratvecs_from_json(j.at("rays"));
  c.lineality = ratvecs_from_json(j.at("lineality"));
  c.facets = ratvecs_from_json(j.at("facets"));
  c.equations = ratvecs_from_json(j.at("equations"));
  return c;
}

// ---- presentations (maps between projectives) ----
//
// Entries are stored path-by-path, so the encoding is intrinsic to the quiver
// and does not depend on internal basis numbering:
// { "cod": ["1"], "dom": ["2"], "ent": [[[{"coeff": 5, "path": ["a"]}]]] }

namespace detail {

inline int basis_index_of_path(const Algebra& A, int src,
                               const std::vector<int>& arrows) {
  for (int b = 0; b < A.dim(); ++b) {
    const Path& q = A.basis[b];
    if (q.src == src && q.arrows == arrows) return b;
  }
  throw BadInputFile("path is not a basis element of the algebra");
}

}  // namespace detail

inline Json alg_el_to_json(const Algebra& A, const AlgEl& e) {
  Json terms = Json::array();
  for (std::size_t b = 0; b < e.size(); ++b) {
    if (!e[b]) continue;
    Json path = Json::array();
    for (int a : A.basis[b].arrows) path.push_back(A.spec.arrows[a].name);
    terms.push_back({{"coeff", e[b]}, {"path", path}});
  }
  return terms;
}

inline AlgEl alg_el_from_json(const Algebra& A, int src, const Json& j) {
  AlgEl e = A.zero_el();
  for (const auto& term : j) {
    std::vector<std::string> names;
    for (const auto& an : term.at("path")) names.push_back(an.get<std::string>());
    int b = detail::basis_index_of_path(A, src, arrows_by_name(A.spec, names));
    e[b] = fp::reduce(term.at("coeff").get<long long>(), A.p);
  }
  return e;
}

inline Json proj_map_to_json(const ProjMap& f) {
  const Algebra& A = *f.A;
  Json j;
  Json cod = Json::array(), dom = Json::array();
  for (int v : f.cod) cod.push_back(A.spec.vertices[v]);
  for (int v : f.dom) dom.push_back(A.spec.vertices[v]);
  j["cod"] = cod;
  j["dom"] = dom;
  Json ent = Json::array();
  for (std::size_t r = 0; r < f.cod.size(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < f.dom.size(); ++c)
      row.push_back(alg_el_to_json(A, f.ent[r][c]));
    ent.push_back(row);
  }
  j["ent"] = ent;
  return j;
}

inline ProjMap proj_map_from_json(const Algebra& A, const Json& j) {
  auto vertex_index = [&](const std::string& name) {
    for (int i = 0; i < A.n_vertices(); ++i)
      if (A.spec.vertices[i] == name) return i;
    throw BadInputFile("unknown vertex name: " + name);
  };
  std::vector<int> cod, dom;
  for (const auto& v : j.at("cod")) cod.push_back(vertex_index(v.get<std::string>()));
  for (const auto& v : j.at("dom")) dom.push_back(vertex_index(v.get<std::string>()));
  ProjMap f = zero_proj_map(A, cod, dom);
  const auto& ent = j.at("ent");
  for (std::size_t r = 0; r < cod.size(); ++r)
    for (std::size_t c = 0; c < dom.size(); ++c)
      f.ent[r][c] = alg_el_from_json(A, cod[r], ent.at(r).at(c));
  return f;
}

// ---- result documents ----
//
// Every result carries a "meta" block with command, prime, p_enum, samples
// and seed, and enough certificate material for the verify subcommand to
// re-check the claims without re-sampling.

inline Json meta_json(const std::string& command, std::uint64_t prime,
                      std::uint64_t p_enum, int samples, std::uint64_t seed) {
  Json m;
  m["command"] = command;
  m["prime"] = prime;
  m["p_enum"] = p_enum;
  m["samples"] = samples;
  m["seed"] = seed;
  return m;
}

inline Json kclass_to_json(const KClass& k) { return Json(k); }

inline KClass kclass_from_json(const Json& j) {
  return j.get<std::vector<long long>>();
}

inline Json e_inv_result(const Algebra& A, std::uint64_t p_enum, const KClass& eta,
                         const KClass& theta, const EEstimate& est,
                         const ProjMap* f, const ProjMap* g) {
  Json j;
  j["meta"] = meta_json("e-inv", A.p, p_enum, est.samples, est.seed);
  j["eta"] = kclass_to_json(eta);
  j["theta"] = kclass_to_json(theta);
  j["value"] = est.value;
  j["certified_zero"] = est.certified_zero;
  if (est.witness)
    j["witness_streams"] = {est.witness->first, est.witness->second};
  j["certificate"] = Json::object();
  if (f) j["certificate"]["f"] = proj_map_to_json(*f);
  if (g) j["certificate"]["g"] = proj_map_to_json(*g);
  return j;
}

inline Json decompose_result(const Algebra& A, std::uint64_t p_enum,
                             const KClass& theta, const CanonicalDecomposition& cd) {
  Json j;
  j["meta"] = meta_json("decompose", A.p, p_enum, cd.samples, cd.seed);
  j["theta"] = kclass_to_json(theta);
  j["summands"] = Json::array();
  for (const KClass& s : cd.summands) j["summands"].push_back(kclass_to_json(s));
  j["pairwise_zero"] = cd.pairwise_zero;
  j["e_ff"] = cd.e_ff;
  Json certs = Json::array();
  for (const auto& [ij, e] : cd.certificates)
    certs.push_back({{"i", ij.first}, {"j", ij.second}, {"e", e}});
  j["certificates"] = certs;
  j["pieces"] = Json::array();
  for (const SplitPiece& pc : cd.pieces)
    j["pieces"].push_back({{"map", proj_map_to_json(pc.map)},
                           {"end_dim", pc.end_dim},
                           {"end_local", pc.end_local}});
  return j;
}

// Re-check a decompose document from its stored presentations alone.
inline bool verify_decompose(const Algebra& A, const Json& j) {
  KClass theta = kclass_from_json(j.at("theta"));
  std::vector<ProjMap> maps;
  std::vector<KClass> classes;
  KClass total(A.n_vertices(), 0);
  for (const auto& pj : j.at("pieces")) {
    ProjMap f = proj_map_from_json(A, pj.at("map"));
    KClass c = class_of_map(f);
    total = kclass_add(total, c);
    maps.push_back(std::move(f));
    classes.push_back(std::move(c));
  }
  // summands are reported as a sorted multiset; pieces keep split order
  std::vector<KClass> claimed;
  for (const auto& sj : j.at("summands")) claimed.push_back(kclass_from_json(sj));
  std::vector<KClass> found = classes;
  std::sort(found.begin(), found.end());
  std::sort(claimed.begin(), claimed.end());
  if (found != claimed) return false;
  if (total != theta) return false;
  // each piece must have local endomorphisms and the pairwise E values
  // must match the stored certificates
  for (const auto& cj : j.at("certificates")) {
    std::size_t i = cj.at("i").get<std::size_t>();
    std::size_t k = cj.at("j").get<std::size_t>();
    if (i >= maps.size() || k >= maps.size()) return false;
    if (e_of_pair(maps[i], maps[k]) != cj.at("e").get<long long>()) return false;
  }
  if (j.at("pairwise_zero").get<bool>()) {
    for (const auto& cj : j.at("certificates"))
      if (cj.at("e").get<long long>() != 0) return false;
  }
  return true;
}

inline bool verify_e_inv(const Algebra& A, const Json& j) {
  if (!j.at("certified_zero").get<bool>()) return true;  // nothing certified
  const Json& cert = j.at("certificate");
  if (!cert.contains("f") || !cert.contains("g")) return false;
  ProjMap f = proj_map_from_json(A, cert.at("f"));
  ProjMap g = proj_map_from_json(A, cert.at("g"));
  if (class_of_map(f) != kclass_from_json(j.at("eta"))) return false;
  if (class_of_map(g) != kclass_from_json(j.at("theta"))) return false;
  return e_of_pair(f, g) == 0;
}

inline std::string dump_result(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace stabfan
