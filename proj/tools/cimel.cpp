// Command-line driver: loads a system description, runs one analysis (or all
// of them) and emits a report in pretty text or machine-readable JSON.
//
// Exit status: 0 when every non-heuristic check passes, 1 when some check
// fails, 2 on usage, I/O or input-domain errors.  Heuristic and informational
// results are marked as such and never affect the exit status.
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cimel/gkz.hpp"
#include "cimel/horn.hpp"
#include "cimel/io.hpp"
#include "cimel/mirror.hpp"
#include "cimel/polytope.hpp"
#include "cimel/spectra.hpp"

using namespace cim;

namespace {

constexpr unsigned kDefaultSeed = 20260826u;

struct Options {
  std::string command, file;
  Placement placement = Placement::automatic;
  std::optional<std::size_t> q;
  std::vector<Rat> J, zeta;
  unsigned seed = kDefaultSeed;
  bool machine = false;
};

struct Check {
  std::string name;
  std::string status;  // "pass", "fail", "heuristic", "info"
  std::string detail;
};

struct Report {
  std::vector<Check> checks;
  json data = json::object();
  std::vector<std::string> lines;  // pretty-text payload

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    checks.push_back({name, ok ? "pass" : "fail", detail});
  }
  void soft(const std::string& name, const std::string& status, const std::string& detail) {
    checks.push_back({name, status, detail});
  }
  void line(const std::string& s) { lines.push_back(s); }
  bool ok() const {
    for (auto& c : checks)
      if (c.status == "fail") return false;
    return true;
  }
};

[[noreturn]] void usage(const std::string& msg) {
  if (!msg.empty()) std::cerr << "error: " << msg << "\n";
  std::cerr << "usage: cimel <command> <file> [--placement auto|explicit] [--q INDEX]\n"
               "             [--J v,...] [--zeta v,...] [--seed N] [--format text|machine]\n"
               "commands: matrix mellin horn euler ehrhart hodge spectra gkz mirror verify-all\n";
  std::exit(2);
}

std::vector<Rat> parse_rats(const std::string& s) {
  std::vector<Rat> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) usage("empty entry in rational list");
    try {
      Rat r(tok);
      r.canonicalize();
      out.push_back(r);
    } catch (...) {
      usage("cannot parse rational: " + tok);
    }
  }
  return out;
}

Options parse_args(int argc, char** argv) {
  Options o;
  if (const char* env = std::getenv("CIMEL_SEED")) {
    try {
      o.seed = unsigned(std::stoul(env));
    } catch (...) {
      usage("CIMEL_SEED is not a number");
    }
  }
  std::vector<std::string> pos;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    auto value = [&](const char* flag) -> std::string {
      if (++i >= argc) usage(std::string(flag) + " needs a value");
      return argv[i];
    };
    if (a == "--placement") {
      std::string v = value("--placement");
      if (v == "auto")
        o.placement = Placement::automatic;
      else if (v == "explicit")
        o.placement = Placement::explicit_list;
      else
        usage("--placement must be auto or explicit");
    } else if (a == "--q") {
      o.q = std::stoul(value("--q"));
    } else if (a == "--J") {
      o.J = parse_rats(value("--J"));
    } else if (a == "--zeta") {
      o.zeta = parse_rats(value("--zeta"));
    } else if (a == "--seed") {
      try {
        o.seed = unsigned(std::stoul(value("--seed")));
      } catch (...) {
        usage("--seed is not a number");
      }
    } else if (a == "--format") {
      std::string v = value("--format");
      if (v == "text")
        o.machine = false;
      else if (v == "machine")
        o.machine = true;
      else
        usage("--format must be text or machine");
    } else if (a == "--help" || a == "-h") {
      usage("");
    } else if (!a.empty() && a[0] == '-') {
      usage("unknown flag: " + a);
    } else {
      pos.push_back(a);
    }
  }
  if (pos.size() != 2) usage("expected <command> <file>");
  o.command = pos[0];
  o.file = pos[1];
  return o;
}

std::string join_rats(const std::vector<Rat>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << to_string(v[i]);
  return os.str();
}

json zform_json(const ZForm& f) {
  json j;
  j["cst"] = to_json(f.cst);
  j["z"] = vec_json(f.zc);
  j["text"] = to_string(f);
  return j;
}

json gamma_json(const GammaProduct& g) {
  json a = json::array();
  for (auto& [f, m] : g.factors) {
    json e = zform_json(f);
    e["mult"] = std::to_string(m);
    a.push_back(e);
  }
  return a;
}

// Everything below mutates a shared report so verify-all can chain commands.

void run_matrix(const Options& o, const LaurentSystem& sys, const CayleyMatrix& cm, Report& r) {
  auto [ok, d] = check_nondegenerate(cm);
  r.check("nondegenerate", ok, "det=" + to_string(d));
  r.data["matrix"]["l"] = to_json(cm.l);
  r.data["matrix"]["det"] = to_json(d);
  r.data["matrix"]["rows"] = std::to_string(cm.rows());
  r.data["matrix"]["n_x"] = std::to_string(cm.n_x);
  r.data["matrix"]["n_aux"] = std::to_string(cm.n_aux);
  r.data["matrix"]["n_s"] = std::to_string(cm.n_s);
  r.data["matrix"]["n_y"] = std::to_string(cm.n_y);
  r.line("combined matrix: " + std::to_string(cm.rows()) + "x" + std::to_string(cm.rows()) +
         "  det=" + to_string(d));
  if (ok) {
    auto si = scaled_inverse(cm.l);
    r.data["matrix"]["delta"] = to_json(si->delta);
    r.data["matrix"]["scaled_inverse"] = to_json(si->t);
    r.line("delta=" + to_string(si->delta));
  }
  (void)o;
  (void)sys;
}

void run_mellin(const Options& o, const CayleyMatrix& cm, const FormData& fd, Report& r) {
  r.check("sum_rules", verify_sum_rules(fd));
  json forms = json::array();
  for (auto& f : fd.forms) forms.push_back(zform_json(instantiate(f, o.J, o.zeta)));
  r.data["mellin"]["forms"] = forms;
  auto gp = gamma_product(fd, o.J, o.zeta);
  r.data["mellin"]["gamma_product"] = gamma_json(gp);
  r.line("mellin transform (mod delta-periodic units): " + to_string(gp));
  json sets = json::array();
  for (std::size_t q = 0; q < fd.d; ++q) {
    if (o.q && *o.q != q) continue;
    auto is = index_sets(fd, q);
    json s;
    s["q"] = std::to_string(q);
    s["plus"] = json::array();
    for (auto a : is.plus) s["plus"].push_back(std::to_string(a));
    s["minus"] = json::array();
    for (auto a : is.minus) s["minus"].push_back(std::to_string(a));
    s["zero"] = json::array();
    for (auto a : is.zero) s["zero"].push_back(std::to_string(a));
    sets.push_back(s);
    r.line("index sets q=" + std::to_string(q) + ": |plus|=" + std::to_string(is.plus.size()) +
           " |minus|=" + std::to_string(is.minus.size()) +
           " |zero|=" + std::to_string(is.zero.size()));
  }
  r.data["mellin"]["index_sets"] = sets;
  (void)cm;
}

void run_horn(const Options& o, const FormData& fd, Report& r) {
  json ops = json::array();
  for (std::size_t q = 0; q < fd.d; ++q) {
    if (o.q && *o.q != q) continue;
    auto op = horn_operators(fd, q, o.J, o.zeta);
    std::string tag = "q=" + std::to_string(q);
    r.check("degree_match " + tag, horn_degree_check(op),
            std::to_string(op.p_factors.size()) + " vs " + std::to_string(op.q_factors.size()));
    r.check("non_resonance " + tag, non_resonance(op));
    for (std::size_t u = q + 1; u < fd.d; ++u) {
      auto comp = compatibility_check(fd, q, u, o.J, o.zeta, o.seed);
      r.check("shift_compatibility q=" + std::to_string(q) + ",r=" + std::to_string(u), comp.ok,
              std::to_string(comp.checked) + "/" + std::to_string(comp.requested) + " points");
    }
    json oj;
    oj["q"] = std::to_string(q);
    oj["delta"] = to_json(op.delta);
    oj["p_degree"] = std::to_string(op.p_factors.size());
    oj["q_degree"] = std::to_string(op.q_factors.size());
    json pf = json::array(), qf = json::array();
    for (auto& f : op.p_factors) pf.push_back(zform_json(f));
    for (auto& f : op.q_factors) qf.push_back(zform_json(f));
    oj["p_factors"] = pf;
    oj["q_factors"] = qf;
    ops.push_back(oj);
    r.line("horn operator q=" + std::to_string(q) + ": deg P=" +
           std::to_string(op.p_factors.size()) + " deg Q=" + std::to_string(op.q_factors.size()) +
           " shift order " + to_string(op.delta));
    // growth diagnostic on the quotient split positive/negative terms
    auto is = index_sets(fd, q);
    auto gr = growth_check(fd, is.plus, is.minus, o.seed);
    r.soft("growth_alpha " + tag, "heuristic",
           "balance=" + std::string(gr.column_balance ? "yes" : "no") +
               " alpha_min=" + to_string(gr.alpha_min));
  }
  r.data["horn"]["operators"] = ops;
}

void run_euler(const Options& o, const LaurentSystem& sys, const CayleyMatrix& cm,
               const FormData& fd, Report& r) {
  json ej = json::array();
  for (std::size_t q = 0; q < cm.n_y; ++q) {
    if (o.q && *o.q != q) continue;
    Int e = euler_degree(sys, cm, q);
    json j;
    j["q"] = std::to_string(q);
    j["euler_degree"] = to_json(e);
    std::string line = "q=" + std::to_string(q) + ": mixed-volume degree " + to_string(e);
    // only deformed blocks carry a Horn operator to compare against
    if (auto s = cm.s_of_block(q)) {
      auto op = horn_operators(fd, *s, o.J, o.zeta);
      j["horn_degree"] = std::to_string(op.p_factors.size());
      bool same = Int(op.p_factors.size()) == e;
      r.soft("euler_vs_horn q=" + std::to_string(q), "info",
             to_string(e) + (same ? " == " : " != ") + std::to_string(op.p_factors.size()));
      line += ", horn operator degree " + std::to_string(op.p_factors.size());
    }
    ej.push_back(j);
    r.line(line);
  }
  r.data["euler"] = ej;
}

void run_ehrhart(const CayleyMatrix& cm, Report& r) {
  auto p = phase_polytope(cm);
  auto e = ehrhart(p);
  r.check("reciprocity", e.reciprocity);
  r.check("psi0_is_one", !e.psi.empty() && e.psi[0] == 1);
  r.data["ehrhart"]["dim"] = std::to_string(p.dim);
  r.data["ehrhart"]["counts"] = vec_json(e.counts);
  r.data["ehrhart"]["interior"] = vec_json(e.interior);
  r.data["ehrhart"]["psi"] = vec_json(e.psi);
  r.data["ehrhart"]["phi"] = vec_json(e.phi);
  r.data["ehrhart"]["normalized_volume"] = to_json(e.nvol);
  std::ostringstream os;
  os << "psi =";
  for (auto& x : e.psi) os << " " << x;
  r.line("phase polytope dim " + std::to_string(p.dim) + ", normalized volume " +
         to_string(e.nvol));
  r.line(os.str());
}

void run_hodge(const Options& o, const CayleyMatrix& cm, const FormData& fd, Report& r) {
  try {
    auto h = hodge_level(cm, fd, o.J, o.zeta);
    r.data["hodge"]["degree"] = to_json(h.degree);
    r.data["hodge"]["level"] = to_json(h.level);
    r.data["hodge"]["polytope_cross_check"] = h.cross_check;
    r.soft("hodge_cross_check", "info", h.cross_check ? "agrees" : "differs");
    r.line("filtration degree " + to_string(h.degree) + ", level " + to_string(h.level));
  } catch (const std::exception& e) {
    r.soft("hodge_level", "info", std::string("not defined: ") + e.what());
    r.line(std::string("filtration level not defined: ") + e.what());
  }
  json wl = json::array();
  for (std::size_t l = 0; l < fd.d; ++l) {
    if (o.q && *o.q != l) continue;
    std::size_t w = weight_level(fd, l, o.J, o.zeta);
    wl.push_back(std::to_string(w));
    r.line("weight level q=" + std::to_string(l) + ": " + std::to_string(w));
  }
  r.data["hodge"]["weight_levels"] = wl;
}

void run_spectra(const Options& o, const CayleyMatrix& cm, const FormData& fd, Report& r) {
  auto w = weight_vectors(cm, fd);
  r.data["spectra"]["trivial_columns"] = std::to_string(w.n_trivial);
  r.data["spectra"]["nontrivial_reported"] = std::to_string(w.n_nontrivial_reported);
  r.line("weight vectors: " + std::to_string(w.n_trivial) + " trivial, " +
         std::to_string(w.n_nontrivial_reported) + " reported nontrivial");
  json regions = json::array();
  for (std::size_t q = 0; q < fd.d; ++q) {
    if (o.q && *o.q != q) continue;
    auto reg = spectra(fd, q, o.J, o.zeta);
    json rj;
    rj["q"] = std::to_string(q);
    json iq = json::array();
    for (auto& in : reg.ineqs) {
      json one;
      one["a"] = vec_json(in.a);
      one["b"] = to_json(in.b);
      iq.push_back(one);
    }
    rj["inequalities"] = iq;
    json vs = json::array();
    for (auto& v : reg.vertices) vs.push_back(vec_json(v));
    rj["vertices"] = vs;
    regions.push_back(rj);
    r.line("pole region q=" + std::to_string(q) + ": " + std::to_string(reg.ineqs.size()) +
           " inequalities, " + std::to_string(reg.vertices.size()) + " vertices");
  }
  r.data["spectra"]["regions"] = regions;
  auto jb = jordan_bound(fd, o.J, o.zeta);
  r.soft("jordan_bound", "heuristic",
         "bound=" + std::to_string(jb.bound) + " box=" + to_string(jb.box));
  r.data["spectra"]["jordan_bound"] = std::to_string(jb.bound);
}

void run_gkz(const Options& o, const CayleyMatrix& cm, Report& r) {
  auto g = gkz_system(cm, o.J, o.zeta);
  r.data["gkz"]["a"] = to_json(g.a);
  r.data["gkz"]["rhs"] = vec_json(g.rhs);
  json lat = json::array(), boxes = json::array();
  for (auto& v : g.lattice) {
    lat.push_back(vec_json(v));
    boxes.push_back(box_operator_string(v));
  }
  r.data["gkz"]["lattice"] = lat;
  r.data["gkz"]["box_operators"] = boxes;
  r.data["gkz"]["rank_a"] = std::to_string(g.rank_a);
  r.line("toric data: rank " + std::to_string(g.rank_a) + ", kernel dimension " +
         std::to_string(g.lattice.size()));
  for (auto& b : boxes) r.line("box operator: " + b.get<std::string>());
  auto gr = gkz_rank(cm);
  r.check("rank_volumes_equal", gr.equal,
          to_string(gr.cone_volume) + " vs " + to_string(gr.slice_volume));
  r.data["gkz"]["cone_volume"] = to_json(gr.cone_volume);
  r.data["gkz"]["slice_volume"] = to_json(gr.slice_volume);
  auto sc = sigma_change(cm);
  r.check("frame_change_shape", sc.shape_ok);
}

void run_mirror(const Options& o, const LaurentSystem& sys, Report& r) {
  if (sys.mirror_partition.empty()) {
    r.soft("mirror_data", "info", "no partition in input; skipped");
    return;
  }
  MirrorInput mi = mirror_input(sys);
  MirrorPair p;
  try {
    p = transpose_pair(mi);
  } catch (const std::exception& e) {
    r.check("weight_rays", false, e.what());
    return;
  }
  r.check("weight_rays", true);
  r.check("sizes_match", p.sizes_match);
  r.check("weights_rank", p.gx.rank_ok && p.gy.rank_ok);
  r.check("weights_balanced", p.gx.cy && p.gy.cy);
  auto side = [&](const char* tag, const MirrorInput& m, const WeightData& other) {
    auto cm = build_phase(m.sys);
    auto fd = linear_forms(cm);
    auto xi = xi_forms(fd);
    r.check(std::string("distinguished_coords ") + tag, check_distinguished_xi(m, xi));
    auto ff = factor_forms(m, xi, other);
    r.check(std::string("factored_forms ") + tag, ff.ok);
    if (ff.ok) {
      auto closed = mellin_closed_form(m, other, ff);
      r.check(std::string("closed_form_matches ") + tag,
              gamma_equivalent(closed, gamma_product(fd, {}, {})));
      json bf = json::array();
      for (auto& f : ff.block_form) bf.push_back(zform_json(f));
      r.data["mirror"][tag]["block_forms"] = bf;
      r.data["mirror"][tag]["closed_form"] = gamma_json(closed);
      r.line(std::string(tag) + " closed form: " + to_string(closed));
    }
    auto ms = magic_square(m, cm, fd);
    r.soft(std::string("magic_square ") + tag, "info", ms.ok ? "pairing exists" : "no pairing");
    r.data["mirror"][tag]["magic_square"] = ms.ok;
  };
  side("direct", p.x, p.gy);
  side("transpose", p.y, p.gx);
  auto rep = verify_bck(p);
  r.check("series_chain_direct", rep.x_chain);
  r.check("series_chain_transpose", rep.y_chain);
  r.data["mirror"]["diagonal_series"] = to_string(rep.m_x);
  r.line("diagonal series: " + to_string(rep.m_x));
  for (std::size_t v = 0; v < mi.k; ++v) {
    auto op = quantum_operator(p, v);
    r.check("regulator_degree q=" + std::to_string(v), op.degree_match,
            std::to_string(op.theta_part.size()) + " vs " + std::to_string(op.t_part.size()));
  }
  json wj = json::array();
  for (auto& g : p.gx.g) wj.push_back(vec_json(g));
  r.data["mirror"]["weights"] = wj;
  r.data["mirror"]["degrees"] = to_json(p.gx.qhat);
  json wyj = json::array();
  for (auto& g : p.gy.g) wyj.push_back(vec_json(g));
  r.data["mirror"]["weights_transpose"] = wyj;
  r.data["mirror"]["degrees_transpose"] = to_json(p.gy.qhat);
}

int run(const Options& o) {
  LaurentSystem sys;
  try {
    sys = load_system(o.file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  Report r;
  try {
    CayleyMatrix cm = build_phase(sys, o.placement);
    std::optional<FormData> fd;
    auto forms = [&]() -> const FormData& {
      if (!fd) fd = linear_forms(cm);
      return *fd;
    };
    if (o.command == "matrix") {
      run_matrix(o, sys, cm, r);
    } else if (o.command == "mellin") {
      run_mellin(o, cm, forms(), r);
    } else if (o.command == "horn") {
      run_horn(o, forms(), r);
    } else if (o.command == "euler") {
      run_euler(o, sys, cm, forms(), r);
    } else if (o.command == "ehrhart") {
      run_ehrhart(cm, r);
    } else if (o.command == "hodge") {
      run_hodge(o, cm, forms(), r);
    } else if (o.command == "spectra") {
      run_spectra(o, cm, forms(), r);
    } else if (o.command == "gkz") {
      run_gkz(o, cm, r);
    } else if (o.command == "mirror") {
      run_mirror(o, sys, r);
    } else if (o.command == "verify-all") {
      run_matrix(o, sys, cm, r);
      run_mellin(o, cm, forms(), r);
      run_horn(o, forms(), r);
      run_gkz(o, cm, r);
      run_spectra(o, cm, forms(), r);
      run_hodge(o, cm, forms(), r);
      // point enumeration blows up with the ambient dimension; only run the
      // volume-by-counting commands when they are sure to finish quickly
      if (cm.n_x + cm.n_aux + cm.n_y <= 5) {
        run_euler(o, sys, cm, forms(), r);
        run_ehrhart(cm, r);
      } else {
        r.soft("euler", "info", "skipped: ambient dimension too large for enumeration");
        r.soft("ehrhart", "info", "skipped: ambient dimension too large for enumeration");
      }
      run_mirror(o, sys, r);
    } else {
      usage("unknown command: " + o.command);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (o.machine) {
    json out;
    out["command"] = o.command;
    out["input"] = o.file;
    out["name"] = sys.name;
    out["seed"] = std::to_string(o.seed);
    if (!o.J.empty()) out["J"] = vec_json(o.J);
    if (!o.zeta.empty()) out["zeta"] = vec_json(o.zeta);
    json checks = json::array();
    for (auto& c : r.checks) {
      json cj;
      cj["name"] = c.name;
      cj["status"] = c.status;
      if (!c.detail.empty()) cj["detail"] = c.detail;
      checks.push_back(cj);
    }
    out["checks"] = checks;
    out["data"] = r.data;
    out["ok"] = r.ok();
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "command: " << o.command << "\n";
    std::cout << "input: " << o.file << " (" << sys.name << ")\n";
    if (!o.J.empty()) std::cout << "J: " << join_rats(o.J) << "\n";
    if (!o.zeta.empty()) std::cout << "zeta: " << join_rats(o.zeta) << "\n";
    for (auto& l : r.lines) std::cout << l << "\n";
    for (auto& c : r.checks) {
      std::cout << (c.status == "pass" || c.status == "fail" ? "check " : "note ") << c.name
                << ": " << c.status;
      if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
      std::cout << "\n";
    }
    std::cout << (r.ok() ? "result: ok" : "result: FAILED") << "\n";
  }
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options o = parse_args(argc, argv);
  return run(o);
}
