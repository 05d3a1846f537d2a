// stabfan: exact computations with presentations, walls and cones for
// finite-dimensional quiver algebras over prime fields.
//
// Exit codes: 0 ok, 1 usage error, 2 invalid algebra/input, 3 enumeration
// budget exceeded, 4 certificate re-verification failed.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <stabfan/atilde.hpp>
#include <stabfan/candecomp.hpp>
#include <stabfan/io.hpp>
#include <stabfan/stability.hpp>
#include <stabfan/svg.hpp>

using namespace stabfan;

namespace {

int env_threads() {
  const char* v = std::getenv("STABFAN_THREADS");
  if (v) {
    int n = std::atoi(v);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

struct Common {
  std::uint64_t prime = 2147483647ULL;
  std::uint64_t p_enum = 2;
  int samples = 5;
  std::uint64_t seed = 1;
  std::uint64_t budget = 1u << 24;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--prime", c.prime, "field size for generic sampling");
  cmd->add_option("--p-enum", c.p_enum, "small prime for exhaustive enumeration");
  cmd->add_option("--samples", c.samples, "presentation samples per estimate");
  cmd->add_option("--seed", c.seed, "master seed");
  cmd->add_option("--budget", c.budget, "submodule enumeration budget");
  cmd->add_option("-o,--out", c.out, "output file (default stdout)");
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw BadInputFile("cannot write " + c.out);
  f << text;
}

Json meta_with_algebra(const std::string& command, const QuiverSpec& s,
                       const Common& c) {
  Json m = meta_json(command, c.prime, c.p_enum, c.samples, c.seed);
  m["algebra"] = quiver_spec_to_json(s);
  return m;
}

Json e_inv_block(const Algebra& A, const KClass& eta, const KClass& theta,
                 const EEstimate& est) {
  Json j;
  j["eta"] = kclass_to_json(eta);
  j["theta"] = kclass_to_json(theta);
  j["value"] = est.value;
  j["certified_zero"] = est.certified_zero;
  if (est.witness)
    j["witness_streams"] = {est.witness->first, est.witness->second};
  j["certificate"] = Json::object();
  if (est.certified_zero && est.witness) {
    auto f = sample_presentation(A, eta, Rng::stream(est.seed, est.witness->first).next());
    auto g = sample_presentation(A, theta, Rng::stream(est.seed, est.witness->second).next());
    j["certificate"]["f"] = proj_map_to_json(f.map);
    j["certificate"]["g"] = proj_map_to_json(g.map);
  }
  return j;
}

Json hn_to_json(const HNFiltration& hn) {
  Json j = Json::array();
  for (const HNLayer& l : hn.layers)
    j.push_back({{"t", rat_to_json(l.t)},
                 {"dimv", l.subquotient.dimv()},
                 {"module", rep_to_json(l.subquotient)}});
  return j;
}

// cone documents: recompute the double description from the stored
// generators and demand it matches the stored facets/equations
bool verify_cone_block(const Json& j) {
  ConeQ c = cone_from_json(j);
  std::vector<RatVec> gens = c.rays;
  for (const auto& l : c.lineality) {
    gens.push_back(l);
    RatVec neg = l;
    for (auto& x : neg) x = -x;
    gens.push_back(neg);
  }
  ConeQ re = cone_from_generators(c.ambient, gens);
  return cone_eq(re, c) && re.dim() == j.at("dim").get<std::size_t>();
}

int run_verify(const std::string& path) {
  Json doc = load_json_file(path);
  const Json& meta = doc.at("meta");
  std::string command = meta.at("command").get<std::string>();
  std::uint64_t prime = meta.at("prime").get<std::uint64_t>();
  std::uint64_t p_enum = meta.at("p_enum").get<std::uint64_t>();
  QuiverSpec spec = quiver_spec_from_json(meta.at("algebra"));
  bool ok = false;
  if (command == "decompose") {
    Algebra A = build_algebra(spec, prime);
    ok = verify_decompose(A, doc);
  } else if (command == "e-inv") {
    Algebra A = build_algebra(spec, prime);
    ok = verify_e_inv(A, doc.at("forward")) && verify_e_inv(A, doc.at("backward"));
  } else if (command == "wall" || command == "dcone") {
    ok = verify_cone_block(doc.at("cone"));
    if (ok && command == "dcone" && doc.contains("presentation")) {
      Algebra A = build_algebra(spec, p_enum);
      ProjMap f = proj_map_from_json(A, doc.at("presentation"));
      ok = class_of_map(f) == kclass_from_json(doc.at("theta"));
    }
  } else if (command == "hn") {
    // structural re-check: strictly increasing t, dimension additivity,
    // every layer semistable at its parameter
    Algebra A = build_algebra(spec, p_enum);
    KClass theta = kclass_from_json(doc.at("theta"));
    std::vector<long long> total(A.n_vertices(), 0);
    Rat prev(-1);
    ok = true;
    for (const auto& lj : doc.at("layers")) {
      Rat t = rat_from_json(lj.at("t"));
      if (!(prev < t)) ok = false;
      prev = t;
      Rep L = rep_from_json(A, lj.at("module"));
      auto dv = L.dimv();
      for (int v = 0; v < A.n_vertices(); ++v) total[v] += dv[v];
      RatVec tt(A.n_vertices());
      for (int v = 0; v < A.n_vertices(); ++v)
        tt[v] = Rat(theta[v]) * (Rat(1) - t) - t;
      auto m = semistable_membership_q(L, tt, Which::W);
      if (m.value != Verdict::In) ok = false;
    }
    if (total != kclass_from_json(doc.at("dimv"))) ok = false;
  } else if (command == "monoid") {
    Algebra A = build_algebra(spec, prime);
    Rep X = rep_from_json(A, doc.at("module"));
    KClass theta = kclass_from_json(doc.at("theta"));
    ok = true;
    for (const auto& row : doc.at("table")) {
      if (!row.at("certified_in").get<bool>()) continue;
      // rebuild the recorded witness stream and re-check surjectivity
      std::uint64_t ws = row.at("witness_stream").get<std::uint64_t>();
      int ell = row.at("ell").get<int>();
      auto f = sample_presentation(A, kclass_scale(ell, theta),
                                   Rng::stream(meta.at("seed").get<std::uint64_t>(), ws).next());
      if (!morphism_membership(X, f.map, MorWhich::Tbar)) ok = false;
    }
  } else if (command == "atilde") {
    ok = true;
    for (const auto& cl : doc.at("atlas"))
      if (!verify_cone_block(cl.at("cone"))) ok = false;
  } else {
    std::cerr << "verify: no checker for command '" << command << "'\n";
    return 2;
  }
  if (!ok) {
    std::cerr << "verify: FAILED for " << path << "\n";
    return 4;
  }
  std::cout << "verify: ok (" << command << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stabfan: walls, cones and canonical decompositions for quiver algebras"};
  app.require_subcommand(1);

  Common c;
  std::string algebra_path, module_path, result_path, svg_path;
  std::vector<long long> theta_in, eta_in;
  int lmax = 0, atilde_n = 3, word_bound = 8, band_len = 12, grid = 2;
  bool rank3 = false;

  auto* cmd_check = app.add_subcommand("algebra-check", "build an algebra file and report its invariants");
  cmd_check->add_option("algebra", algebra_path)->required();
  add_common(cmd_check, c);

  auto* cmd_dec = app.add_subcommand("decompose", "canonical decomposition of a K-theory class");
  cmd_dec->add_option("algebra", algebra_path)->required();
  cmd_dec->add_option("--theta", theta_in, "class, comma separated")->required()->delimiter(',');
  cmd_dec->add_option("--lmax", lmax, "also probe the ray condition up to lmax");
  add_common(cmd_dec, c);

  auto* cmd_einv = app.add_subcommand("e-inv", "generic E-invariant of a pair of classes, both directions");
  cmd_einv->add_option("algebra", algebra_path)->required();
  cmd_einv->add_option("--eta", eta_in)->required()->delimiter(',');
  cmd_einv->add_option("--theta", theta_in)->required()->delimiter(',');
  add_common(cmd_einv, c);

  auto* cmd_wall = app.add_subcommand("wall", "wall (semistability cone) of a module");
  cmd_wall->add_option("algebra", algebra_path)->required();
  cmd_wall->add_option("--module", module_path)->required();
  add_common(cmd_wall, c);

  auto* cmd_dcone = app.add_subcommand("dcone", "cone D of a generically sampled presentation");
  cmd_dcone->add_option("algebra", algebra_path)->required();
  cmd_dcone->add_option("--theta", theta_in)->required()->delimiter(',');
  add_common(cmd_dcone, c);

  auto* cmd_hn = app.add_subcommand("hn", "Harder-Narasimhan style filtration along a stability path");
  cmd_hn->add_option("algebra", algebra_path)->required();
  cmd_hn->add_option("--module", module_path)->required();
  cmd_hn->add_option("--theta", theta_in)->required()->delimiter(',');
  add_common(cmd_hn, c);

  auto* cmd_tf = app.add_subcommand("tf", "semi-decide TF equivalence of two classes");
  cmd_tf->add_option("algebra", algebra_path)->required();
  cmd_tf->add_option("--theta", theta_in)->required()->delimiter(',');
  cmd_tf->add_option("--eta", eta_in)->required()->delimiter(',');
  add_common(cmd_tf, c);

  auto* cmd_mon = app.add_subcommand("monoid", "probe which multiples of a class see a module");
  cmd_mon->add_option("algebra", algebra_path)->required();
  cmd_mon->add_option("--module", module_path)->required();
  cmd_mon->add_option("--theta", theta_in)->required()->delimiter(',');
  cmd_mon->add_option("--lmax", lmax)->required();
  add_common(cmd_mon, c);

  auto* cmd_scan = app.add_subcommand("scan", "sample walls of cokernels over an integer grid of classes");
  cmd_scan->add_option("algebra", algebra_path)->required();
  cmd_scan->add_flag("--rank3", rank3, "emit an SVG slice for 3-vertex algebras");
  cmd_scan->add_option("--grid", grid, "classes range over [-grid, grid]^n");
  cmd_scan->add_option("--svg", svg_path, "SVG output path");
  add_common(cmd_scan, c);

  auto* cmd_at = app.add_subcommand("atilde", "atlas for the doubled-cycle string algebra");
  cmd_at->add_option("--n", atilde_n, "number of vertices (>= 2)");
  cmd_at->add_option("--bound", word_bound, "reflection word length bound");
  cmd_at->add_option("--bands", band_len, "band length bound");
  cmd_at->add_option("--svg", svg_path, "hexagon figure output path (n = 3)");
  add_common(cmd_at, c);

  auto* cmd_ver = app.add_subcommand("verify", "re-check the certificates of a result document");
  cmd_ver->add_option("result", result_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_check->parsed()) {
      QuiverSpec s = quiver_spec_from_json(load_json_file(algebra_path));
      Algebra A = build_algebra(s, c.prime);
      build_algebra(s, c.p_enum);  // must also build over the enumeration prime
      Json j;
      j["meta"] = meta_with_algebra("algebra-check", s, c);
      j["valid"] = true;
      j["dim"] = A.dim();
      j["n_vertices"] = A.n_vertices();
      j["n_arrows"] = A.spec.arrows.size();
      j["string_algebra"] = is_string_algebra(A);
      std::vector<int> by_deg;
      for (const Path& q : A.basis) {
        if (static_cast<int>(by_deg.size()) <= q.len()) by_deg.resize(q.len() + 1, 0);
        ++by_deg[q.len()];
      }
      j["basis_by_degree"] = by_deg;
      emit(c, dump_result(j));
    } else if (cmd_dec->parsed()) {
      QuiverSpec s = quiver_spec_from_json(load_json_file(algebra_path));
      Algebra A = build_algebra(s, c.prime);
      KClass theta(theta_in);
      auto cd = canonical_decomposition(A, theta, c.samples, c.seed);
      Json j = decompose_result(A, c.p_enum, theta, cd);
      j["meta"] = meta_with_algebra("decompose", s, c);
      if (!verify_decompose(A, j))
        throw VerificationFailed("decomposition certificates do not re-verify");
      if (lmax > 0) {
        auto rp = ray_condition_probe(A, theta, lmax, c.samples, c.seed);
        j["ray_probe"] = {{"theta_indecomposable", rp.theta_indecomposable},
                          {"first_failure", rp.first_failure},
                          {"summand_counts", rp.summand_counts}};
        Json per_l = Json::array();
        for (const auto& cdl : ind_N(A, theta, lmax, c.samples, c.seed)) {
          Json sums = Json::array();
          for (const auto& sm : cdl.summands) sums.push_back(kclass_to_json(sm));
          per_l.push_back(sums);
        }
        j["multiples"] = per_l;
      }
      emit(c, dump_result(j));
    } else if (cmd_einv->parsed()) {
      QuiverSpec s = quiver_spec_from_json(load_json_file(algebra_path));
      Algebra A = build_algebra(s, c.prime);
      KClass eta(eta_in), theta(theta_in);
      auto fwd = e_generic(A, eta, theta, c.samples, c.seed);
      auto bwd = e_generic(A, theta, eta, c.samples, c.seed);
      Json j;
      j["meta"] = meta_with_algebra("e-inv", s, c);
      j["forward"] = e_inv_block(A, eta, theta, fwd);
      j["backward"] = e_inv_block(A, theta, eta, bwd);
      if (!verify_e_inv(A, j["forward"]) || !verify_e_inv(A, j["backward"]))
        throw VerificationFailed("E-invariant certificates do not re-verify");
      emit(c, dump_result(j));
    } else if (cmd_wall->parsed()) {
      QuiverSpec s = quiver_spec_from_json(load_json_file(algebra_path));
      Algebra A = build_algebra(s, c.p_enum);
      Rep X = rep_from_json(A, load_json_file(module_path));
      ConeQ w = wall_of(X, c.budget);
      Json j;
      j["meta"] = meta_with_algebra("wall", s, c);
      j["dimv"] = X.dimv();
      j["cone"] = cone_to_json(w);
      emit(c, dump_result(j));
    } else if (cmd_dcone->parsed()) {
      QuiverSpec s = quiver_spec_from_json(load_json_file(algebra_path));
      Algebra A = build_algebra(s, c.p_enum);
      KClass theta(theta_in);
      auto de = d_eta(A, theta, c.samples, c.seed, c.budget);
      Json j;
      j["meta"] = meta_with_algebra("dcone", s, c);
      j["theta"] = kclass_to_json(theta);
      j["witness_stream"] = de.witness_stream;
      j["tame_certified"] = de.certified;
      auto f = sample_presentation(A, theta, Rng::stream(c.seed, de.witness_stream).next());
      j["presentation"] = proj_map_to_json(f.map);
      j["cone"] = cone_to_json(de.cone);
      emit(c, dump_result(j));
    } else if (cmd_hn->parsed()) {
      QuiverSpec s = quiver_spec_from_json(load_json_file(algebra_path));
      Algebra A = build_algebra(s, c.p_enum);
      Rep X = rep_from_json(A, load_json_file(module_path));
      KClass theta(theta_in);
      Json j;
      j["meta"] = meta_with_algebra("hn", s, c);
      j["theta"] = kclass_to_json(theta);
      j["dimv"] = X.dimv();
      try {
        auto hn = hn_filtration(X, theta, c.budget);
        j["in_tbar"] = true;
        j["layers"] = hn_to_json(hn);
      } catch (const NotInTbar&) {
        j["in_tbar"] = false;
        j["layers"] = Json::array();
      }
      emit(c, dump_result(j));
    } else if (cmd_tf->parsed()) {
      QuiverSpec s = quiver_spec_from_json(load_json_file(algebra_path));
      Algebra A = build_algebra(s, c.prime);
      Algebra Ae = build_algebra(s, c.p_enum);
      KClass theta(theta_in), eta(eta_in);
      auto res = tf_compare(A, Ae, theta, eta, c.samples, c.seed, c.budget);
      Json j;
      j["meta"] = meta_with_algebra("tf", s, c);
      j["theta"] = kclass_to_json(theta);
      j["eta"] = kclass_to_json(eta);
      j["verdict"] = res.value == TFVerdict::Equivalent ? "equivalent"
                     : res.value == TFVerdict::Distinct ? "distinct"
                                                        : "unknown";
      j["method"] = res.method;
      if (res.witness_dimv) j["witness_dimv"] = *res.witness_dimv;
      if (res.witness_t) j["witness_t"] = rat_to_json(*res.witness_t);
      emit(c, dump_result(j));
    } else if (cmd_mon->parsed()) {
      QuiverSpec s = quiver_spec_from_json(load_json_file(algebra_path));
      Algebra A = build_algebra(s, c.prime);
      Rep X = rep_from_json(A, load_json_file(module_path));
      KClass theta(theta_in);
      int mon_samples = c.samples > 5 ? c.samples : 100;
      auto table = monoid_probe(X, theta, lmax, mon_samples, c.seed);
      Json j;
      j["meta"] = meta_with_algebra("monoid", s, c);
      j["meta"]["samples"] = mon_samples;
      j["theta"] = kclass_to_json(theta);
      j["module"] = rep_to_json(X);
      Json rows = Json::array();
      for (const auto& st : table) {
        Json row = {{"ell", st.ell},
                    {"certified_in", st.certified_in},
                    {"samples_tried", st.samples_tried}};
        if (st.witness_stream) row["witness_stream"] = *st.witness_stream;
        rows.push_back(row);
      }
      j["table"] = rows;
      emit(c, dump_result(j));
    } else if (cmd_scan->parsed()) {
      QuiverSpec s = quiver_spec_from_json(load_json_file(algebra_path));
      Algebra A = build_algebra(s, c.p_enum);
      const int n = A.n_vertices();
      if (rank3 && n != 3) throw BadInputFile("--rank3 needs a 3-vertex algebra");
      // the grid of classes, split across worker threads
      std::vector<KClass> grid_classes;
      std::vector<long long> cur(n, -grid);
      while (true) {
        KClass k(cur);
        if (!kclass_is_zero(k)) grid_classes.push_back(k);
        int i = 0;
        while (i < n && ++cur[i] > grid) cur[i++] = -grid;
        if (i == n) break;
      }
      int nthreads = env_threads();
      std::vector<std::vector<ConeQ>> found(nthreads);
      std::vector<std::thread> workers;
      for (int t = 0; t < nthreads; ++t)
        workers.emplace_back([&, t]() {
          for (std::size_t i = t; i < grid_classes.size(); i += nthreads) {
            auto f = sample_presentation(A, grid_classes[i],
                                         Rng::stream(c.seed, i).next());
            Rep cf = cokernel(f.map);
            if (cf.dim_total() == 0) continue;
            try {
              ConeQ w = wall_of(cf, c.budget);
              if (w.dim() + 1 == static_cast<std::size_t>(n)) found[t].push_back(w);
            } catch (const EnumerationBudgetExceeded&) {
              // skip over-budget samples: the scan is a survey, not a census
            }
          }
        });
      for (auto& w : workers) w.join();
      std::vector<ConeQ> walls;
      for (const auto& part : found)
        for (const ConeQ& w : part) {
          bool dup = false;
          for (const ConeQ& u : walls)
            if (cone_eq(u, w)) {
              dup = true;
              break;
            }
          if (!dup) walls.push_back(w);
        }
      Json j;
      j["meta"] = meta_with_algebra("scan", s, c);
      j["meta"]["threads"] = nthreads;
      j["grid"] = grid;
      j["n_classes"] = grid_classes.size();
      j["walls"] = Json::array();
      for (const ConeQ& w : walls) j["walls"].push_back(cone_to_json(w));
      if (rank3) {
        std::string svg = rank3_scan_svg(walls, {}, s.vertices);
        std::string path = svg_path.empty() ? "scan.svg" : svg_path;
        std::ofstream f(path);
        f << svg;
        j["svg"] = path;
      }
      emit(c, dump_result(j));
    } else if (cmd_at->parsed()) {
      Algebra A = build_atilde(atilde_n, c.prime);
      Algebra Ae = build_atilde(atilde_n, c.p_enum == 2 ? 5 : c.p_enum);
      Json j;
      j["meta"] = meta_with_algebra("atilde", A.spec, c);
      j["n"] = atilde_n;
      j["dim"] = A.dim();
      auto atlas = decompose_H(atilde_n, word_bound);
      Json jat = Json::array();
      for (const auto& h : atlas)
        jat.push_back({{"J", h.J}, {"cone", cone_to_json(h.cone)}});
      j["atlas"] = jat;
      j["n_halfspace_chambers"] = halfspace_chambers(atilde_n, word_bound / 2).size();
      auto bands = enumerate_bands(Ae, band_len);
      Json jb = Json::array();
      for (const Band& b : bands) {
        Rep M = band_module(Ae, b, 2);
        jb.push_back({{"code", b.code},
                      {"length", b.len()},
                      {"dimv", M.dimv()},
                      {"brick", is_brick(M)},
                      {"eta", kclass_to_json(eta_of_band(Ae, b, 2))}});
      }
      j["bands"] = jb;
      if (atilde_n == 3) {
        KClass eta12{1, -1, 0};
        auto de = d_eta(Ae, eta12, c.samples, c.seed, c.budget);
        j["gray_sector"] = cone_to_json(de.cone);
        std::string path = svg_path.empty() ? "hexagon.svg" : svg_path;
        std::ofstream f(path);
        f << atilde_hexagon_svg(atlas, &de.cone);
        j["svg"] = path;
      }
      emit(c, dump_result(j));
    } else if (cmd_ver->parsed()) {
      return run_verify(result_path);
    }
  } catch (const EnumerationBudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const VerificationFailed& e) {
    std::cerr << "certificate re-verification failed: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
