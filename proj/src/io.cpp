#include "decaynet/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace decaynet::io {

namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void reject_unknown_keys(const json& doc, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!doc.is_object()) throw FormatError(where, "expected a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw FormatError(where, "unknown key \"" + key + "\"");
  }
}

const json& field(const json& doc, const char* key, const std::string& where) {
  auto it = doc.find(key);
  if (it == doc.end()) throw FormatError(where, std::string("missing key \"") + key + "\"");
  return *it;
}

double real_of(const json& v, const std::string& where) {
  if (!v.is_number()) throw FormatError(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw FormatError(where, "expected a finite number");
  return x;
}

std::size_t index_of(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw FormatError(where, "expected a non-negative integer");
  return v.get<std::size_t>();
}

double real_or(const json& doc, const char* key, double fallback, const std::string& where) {
  auto it = doc.find(key);
  return it == doc.end() ? fallback : real_of(*it, where + "." + key);
}

json set_json(const std::vector<std::size_t>& s) { return json(s); }

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json optional_triple(const std::optional<Triple>& t) { return t ? to_json(*t) : json(nullptr); }

// Non-finite reals are not representable in JSON; they become strings.
json real_json(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

}  // namespace

DecaySpace space_from_json(const json& doc, const std::string& where) {
  reject_unknown_keys(doc, {"mode", "n", "labels", "f"}, where);
  SpaceMode mode = SpaceMode::node_space;
  if (auto it = doc.find("mode"); it != doc.end()) {
    if (!it->is_string()) throw FormatError(where + ".mode", "expected a string");
    try {
      mode = space_mode_from_string(it->get<std::string>());
    } catch (const Error& e) {
      throw FormatError(where + ".mode", e.what());
    }
  }
  const json& f = field(doc, "f", where);
  if (!f.is_array()) throw FormatError(where + ".f", "expected an array of rows");
  const std::size_t n = f.size();
  if (auto it = doc.find("n"); it != doc.end() && index_of(*it, where + ".n") != n)
    throw FormatError(where + ".n", "does not match the number of rows of f");
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_where = where + ".f[" + std::to_string(i) + "]";
    if (!f[i].is_array() || f[i].size() != n)
      throw FormatError(row_where, "expected " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = real_of(f[i][j], row_where + "[" + std::to_string(j) + "]");
  }
  std::vector<std::string> labels;
  if (auto it = doc.find("labels"); it != doc.end()) {
    if (!it->is_array() || it->size() != n) throw FormatError(where + ".labels", "expected n strings");
    for (const auto& l : *it) {
      if (!l.is_string()) throw FormatError(where + ".labels", "expected n strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return DecaySpace(std::move(m), mode, std::move(labels));
}

json to_json(const DecaySpace& space) {
  json doc;
  doc["mode"] = to_string(space.mode());
  doc["n"] = space.size();
  if (!space.labels().empty()) doc["labels"] = space.labels();
  doc["f"] = space.matrix().rows();
  return doc;
}

DecaySpace space_from_csv(const std::string& text, const std::string& where) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(cells, cell, ',')) {
      ++col;
      const std::string loc = where + ":" + std::to_string(line_no) + ":" + std::to_string(col);
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw FormatError(loc, "expected a real number, got \"" + cell + "\"");
      }
      if (cell.find_first_not_of(" \t", used) != std::string::npos)
        throw FormatError(loc, "trailing characters in \"" + cell + "\"");
      if (!std::isfinite(x)) throw FormatError(loc, "expected a finite number");
      row.push_back(x);
    }
    rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != rows.size())
      throw FormatError(where, "row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                                   " entries, expected " + std::to_string(rows.size()));
  return DecaySpace(SquareMatrix::from_rows(rows));
}

DecaySpace load_space(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  if (path.extension() == ".csv") return space_from_csv(text, path.string());
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string(), e.what());
  }
  return space_from_json(doc, path.string());
}

LinkSystem system_from_json(const json& doc, const std::filesystem::path& base_dir, const std::string& where) {
  reject_unknown_keys(doc, {"space", "links", "beta", "noise", "power"}, where);
  const json& sp = field(doc, "space", where);
  DecaySpace space;
  if (sp.is_string()) {
    std::filesystem::path p = sp.get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    space = load_space(p);
  } else {
    space = space_from_json(sp, where + ".space");
  }

  SinrParams params;
  params.beta = real_or(doc, "beta", 1.0, where);
  params.noise = real_or(doc, "noise", 0.0, where);

  PowerAssignment power = PowerAssignment::uniform(1.0);
  if (auto it = doc.find("power"); it != doc.end()) {
    const std::string pw = where + ".power";
    reject_unknown_keys(*it, {"kind", "P"}, pw);
    const json& kind = field(*it, "kind", pw);
    const json& P = field(*it, "P", pw);
    if (kind == "uniform") {
      power = PowerAssignment::uniform(real_of(P, pw + ".P"));
    } else if (kind == "explicit") {
      if (!P.is_array()) throw FormatError(pw + ".P", "expected an array of powers");
      std::vector<double> ps;
      for (std::size_t i = 0; i < P.size(); ++i) ps.push_back(real_of(P[i], pw + ".P[" + std::to_string(i) + "]"));
      power = PowerAssignment::explicit_powers(std::move(ps));
    } else {
      throw FormatError(pw + ".kind", "expected \"uniform\" or \"explicit\"");
    }
  }

  auto lit = doc.find("links");
  if (lit == doc.end()) {
    if (space.mode() != SpaceMode::link_gain)
      throw FormatError(where, "missing key \"links\" (required for node-space systems)");
    return LinkSystem::from_link_gain(std::move(space), params, std::move(power));
  }
  if (!lit->is_array()) throw FormatError(where + ".links", "expected an array of [sender, receiver] pairs");
  std::vector<Link> links;
  for (std::size_t i = 0; i < lit->size(); ++i) {
    const std::string lw = where + ".links[" + std::to_string(i) + "]";
    const json& l = (*lit)[i];
    if (!l.is_array() || l.size() != 2) throw FormatError(lw, "expected [sender, receiver]");
    links.push_back({index_of(l[0], lw), index_of(l[1], lw)});
  }
  return LinkSystem(std::move(space), std::move(links), params, std::move(power));
}

json to_json(const LinkSystem& sys) {
  json doc;
  doc["space"] = to_json(sys.space());
  json links = json::array();
  for (const auto& l : sys.links()) links.push_back({l.sender, l.receiver});
  doc["links"] = std::move(links);
  doc["beta"] = sys.params().beta;
  doc["noise"] = sys.params().noise;
  if (sys.power().is_uniform())
    doc["power"] = {{"kind", "uniform"}, {"P", sys.power().level()}};
  else
    doc["power"] = {{"kind", "explicit"}, {"P", sys.power().powers()}};
  return doc;
}

LinkSystem load_system(const std::filesystem::path& path) {
  return system_from_json(read_json_file(path), path.parent_path(), path.string());
}

Graph graph_from_json(const json& doc, const std::string& where) {
  reject_unknown_keys(doc, {"n", "edges"}, where);
  Graph g;
  g.n = index_of(field(doc, "n", where), where + ".n");
  const json& edges = field(doc, "edges", where);
  if (!edges.is_array()) throw FormatError(where + ".edges", "expected an array of [i, j] pairs");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string ew = where + ".edges[" + std::to_string(k) + "]";
    if (!edges[k].is_array() || edges[k].size() != 2) throw FormatError(ew, "expected [i, j]");
    g.edges.emplace_back(index_of(edges[k][0], ew), index_of(edges[k][1], ew));
  }
  try {
    g.validate();
  } catch (const ValidationError& e) {
    throw FormatError(where, e.what());
  }
  return g;
}

json to_json(const Graph& g) {
  json edges = json::array();
  for (auto [a, b] : g.edges) edges.push_back({a, b});
  return {{"n", g.n}, {"edges", std::move(edges)}};
}

GeneratorSpec generator_spec_from_json(const std::string& family, const json& params,
                                       std::optional<std::uint64_t> seed) {
  const json p = params.is_null() ? json::object() : params;
  const std::string where = "params";
  GeneratorSpec spec;
  spec.seed = seed;
  auto graph_of = [&](const json& doc) {
    if (auto it = doc.find("graph"); it != doc.end()) return graph_from_json(*it, where + ".graph");
    throw FormatError(where, "missing key \"graph\"");
  };
  if (family == "euclidean") {
    reject_unknown_keys(p, {"points", "alpha", "count", "planted_collinear", "side"}, where);
    EuclideanParams e;
    e.alpha = real_or(p, "alpha", e.alpha, where);
    e.side = real_or(p, "side", e.side, where);
    if (auto it = p.find("points"); it != p.end()) {
      if (!it->is_array()) throw FormatError(where + ".points", "expected an array of [x, y]");
      for (std::size_t i = 0; i < it->size(); ++i) {
        const std::string pw = where + ".points[" + std::to_string(i) + "]";
        const json& pt = (*it)[i];
        if (!pt.is_array() || pt.size() != 2) throw FormatError(pw, "expected [x, y]");
        e.points.push_back({real_of(pt[0], pw), real_of(pt[1], pw)});
      }
    }
    if (auto it = p.find("count"); it != p.end()) e.random_count = index_of(*it, where + ".count");
    if (auto it = p.find("planted_collinear"); it != p.end()) {
      if (!it->is_boolean()) throw FormatError(where + ".planted_collinear", "expected a boolean");
      e.planted_collinear = it->get<bool>();
    }
    spec.params = std::move(e);
  } else if (family == "star") {
    reject_unknown_keys(p, {"k", "r"}, where);
    StarParams s;
    if (auto it = p.find("k"); it != p.end()) s.k = index_of(*it, where + ".k");
    s.r = real_or(p, "r", s.r, where);
    spec.params = s;
  } else if (family == "welzl") {
    reject_unknown_keys(p, {"n", "eps"}, where);
    WelzlParams w;
    if (auto it = p.find("n"); it != p.end()) w.n = index_of(*it, where + ".n");
    w.eps = real_or(p, "eps", w.eps, where);
    spec.params = w;
  } else if (family == "equidecay-graph") {
    reject_unknown_keys(p, {"graph"}, where);
    spec.params = EquidecayParams{graph_of(p)};
  } else if (family == "twoline") {
    reject_unknown_keys(p, {"graph", "alpha", "delta"}, where);
    TwolineParams t;
    t.graph = graph_of(p);
    t.alpha = real_or(p, "alpha", t.alpha, where);
    t.delta = real_or(p, "delta", t.delta, where);
    spec.params = std::move(t);
  } else if (family == "threepoint") {
    reject_unknown_keys(p, {"q"}, where);
    ThreepointParams t;
    t.q = real_or(p, "q", t.q, where);
    spec.params = t;
  } else {
    throw FormatError("family", "unknown family \"" + family +
                                    "\" (euclidean, star, welzl, equidecay-graph, twoline, threepoint)");
  }
  return spec;
}

json to_json(const Triple& t) { return {{"from", t.from}, {"to", t.to}, {"via", t.via}}; }

json to_json(const MetricityReport& r) {
  return {{"zeta", r.zeta},
          {"zeta_raw", r.zeta_raw},
          {"phi_mult", r.phi_mult},
          {"phi", real_json(r.phi)},
          {"zeta0", r.zeta0},
          {"witness_zeta", optional_triple(r.witness_zeta)},
          {"witness_phi", optional_triple(r.witness_phi)}};
}

json to_json(const ValidationResult& r) {
  json vs = json::array();
  for (const auto& v : r.violations)
    vs.push_back({{"kind", to_string(v.kind)}, {"row", v.row}, {"col", v.col}, {"value", real_json(v.value)}});
  return {{"ok", r.ok()}, {"violations", std::move(vs)}};
}

json to_json(const CapacityResult& r) {
  return {{"selected", set_json(r.selected)},
          {"intermediate", set_json(r.intermediate)},
          {"drowned", set_json(r.drowned)},
          {"optimum", optional_json(r.opt)},
          {"optimum_witness", set_json(r.opt_witness)},
          {"ratio", optional_json(r.ratio)},
          {"separation_basis", to_string(r.basis)}};
}

json affectance_audit(const LinkSystem& sys, const CapacityResult& r) {
  json rows = json::array();
  auto member = [](const LinkSet& s, LinkId v) { return std::find(s.begin(), s.end(), v) != s.end(); };
  for (LinkId v = 0; v < sys.size(); ++v) {
    const bool drowned = sys.is_drowned(v);
    json row{{"link", v},
             {"sender", sys.link(v).sender},
             {"receiver", sys.link(v).receiver},
             {"own_decay", sys.own_decay(v)},
             {"in_selected", member(r.selected, v)},
             {"in_intermediate", member(r.intermediate, v)},
             {"drowned", drowned}};
    if (!drowned) {
      row["in_affectance_selected"] = in_affectance(sys, r.selected, v);
      row["in_affectance_intermediate"] = in_affectance(sys, r.intermediate, v);
      row["out_affectance_intermediate"] = out_affectance(sys, v, r.intermediate);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Partition& p) {
  return {{"kind", p.kind == CertificateKind::feasibility ? "feasibility" : "separation"},
          {"level", p.level},
          {"classes", p.classes},
          {"class_count", p.classes.size()},
          {"bound", p.bound},
          {"verified", p.verified},
          {"used_fallback", p.used_fallback}};
}

json to_json(const FadingReport& r) {
  return {{"r", r.r},
          {"gamma", r.gamma},
          {"per_node", r.per_node},
          {"witness_node", optional_json(r.witness_node)},
          {"witness_set", set_json(r.witness_set)},
          {"exact", r.exact}};
}

json to_json(const DimensionEstimate& d) {
  json samples = json::array();
  for (const auto& s : d.samples) samples.push_back({{"q", s.q}, {"g", s.g}});
  return {{"assouad", real_json(d.assouad)},
          {"C", real_json(d.C)},
          {"fitted_constant", d.fitted_constant},
          {"samples", std::move(samples)},
          {"radii", d.r_grid.size()},
          {"exact", d.exact}};
}

json to_json(const AmicableResult& r) {
  return {{"subset", set_json(r.subset)},
          {"strengthened", set_json(r.strengthened)},
          {"separated", set_json(r.separated)},
          {"signal_classes", r.signal_classes},
          {"separation_classes", r.separation_classes},
          {"max_out_affectance", r.max_out_affectance},
          {"shrink", real_json(r.shrink)}};
}

json to_json(const IndependenceResult& r) {
  return {{"dimension", r.dimension}, {"center", optional_json(r.center)}, {"set", set_json(r.set)}, {"exact", r.exact}};
}

json read_json_file(const std::filesystem::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw FormatError(path.string(), e.what());
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(path.string(), "cannot open file for writing");
  out << dump(doc);
  if (!out) throw FormatError(path.string(), "write failed");
}

}  // namespace decaynet::io
