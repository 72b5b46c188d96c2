#include "tubelog/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tubelog/errors.hpp"

namespace tubelog {

std::string hexfloat(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return buf;
}

double parse_hexfloat(const std::string& s) {
  return std::strtod(s.c_str(), nullptr);
}

Json rat_to_json(const BigRat& q) {
  return Json{{"num", rat_num(q).str()}, {"den", rat_den(q).str()}};
}

BigRat rat_from_json(const Json& j) {
  return BigRat(BigInt(j.at("num").get<std::string>()),
                BigInt(j.at("den").get<std::string>()));
}

Json config_to_json(const RunConfig& cfg) {
  Json j;
  j["depth"] = cfg.depth;
  j["h0"] = hexfloat(cfg.h0);
  j["M"] = hexfloat(cfg.M);
  j["a_cap"] = cfg.a_cap.str();
  j["alpha_preset"] = cfg.alpha.preset;
  if (!cfg.alpha.explicit_values.empty()) {
    Json arr = Json::array();
    for (double a : cfg.alpha.explicit_values) arr.push_back(hexfloat(a));
    j["alpha"] = arr;
  }
  j["t_samples"] = cfg.t_samples;
  j["seed"] = cfg.seed;
  Json tols;
  for (const auto& [k, v] : cfg.tolerances) tols[k] = hexfloat(v);
  j["tolerances"] = tols;
  Json grids;
  grids["x_grid"] = cfg.grids.x_grid;
  grids["segment_u_samples"] = cfg.grids.segment_u_samples;
  grids["tau_shrink_max"] = cfg.grids.tau_shrink_max;
  grids["margin_factor"] = hexfloat(cfg.grids.margin_factor);
  grids["hyp1_margin"] = hexfloat(cfg.grids.hyp1_margin);
  j["grids"] = grids;
  return j;
}

namespace {

Json stage_to_json(const Stage& s) {
  Json j;
  j["a"] = static_cast<std::int64_t>(s.U.a);
  j["h"] = hexfloat(s.U.h);
  j["A"] = hexfloat(s.U.A);
  j["h_next"] = hexfloat(s.h_next);
  j["hp_next"] = hexfloat(s.hp_next);
  j["tau_next"] = hexfloat(s.tau_next);
  j["Y_next"] = hexfloat(s.Y_next);
  j["logu_Y_next"] = hexfloat(s.logu_Y_next);
  j["R"] = Json::array({hexfloat(s.R.x0), hexfloat(s.R.x1), hexfloat(s.R.y0),
                        hexfloat(s.R.y1)});
  j["hyp_ready"] = s.hyp_ready;
  return j;
}

Stage stage_from_json(const Json& j) {
  Stage s;
  s.U = solve_lambda(j.at("a").get<std::int64_t>(),
                     parse_hexfloat(j.at("h").get<std::string>()));
  // A is re-derived; assert the round trip stayed bit-exact
  const double A = parse_hexfloat(j.at("A").get<std::string>());
  if (A != s.U.A) throw DomainError("ledger JSON: A mismatch on reload");
  s.h_next = parse_hexfloat(j.at("h_next").get<std::string>());
  s.hp_next = parse_hexfloat(j.at("hp_next").get<std::string>());
  s.tau_next = parse_hexfloat(j.at("tau_next").get<std::string>());
  s.Y_next = parse_hexfloat(j.at("Y_next").get<std::string>());
  s.logu_Y_next = parse_hexfloat(j.at("logu_Y_next").get<std::string>());
  const auto& r = j.at("R");
  s.R = Rect{parse_hexfloat(r.at(0).get<std::string>()),
             parse_hexfloat(r.at(1).get<std::string>()),
             parse_hexfloat(r.at(2).get<std::string>()),
             parse_hexfloat(r.at(3).get<std::string>())};
  s.hyp_ready = j.at("hyp_ready").get<bool>();
  return s;
}

}  // namespace

Json ledger_to_json(const ParameterLedger& L) {
  Json j;
  j["h0"] = hexfloat(L.h0);
  j["M"] = hexfloat(L.M);
  j["a_cap"] = L.a_cap.str();
  j["alpha_preset"] = L.alpha.preset;
  Json stages = Json::array();
  for (const Stage& s : L.stages) stages.push_back(stage_to_json(s));
  j["stages"] = stages;
  Json recs = Json::array();
  for (const PredicateRecord& r : L.records) {
    Json e;
    e["name"] = r.name;
    e["statement"] = r.statement;
    e["grid"] = r.grid;
    e["margin"] = hexfloat(r.margin);
    e["pass"] = r.pass;
    recs.push_back(e);
  }
  j["records"] = recs;
  j["frontier_hit"] = L.frontier_hit;
  j["frontier_stage"] = L.frontier_stage;
  j["frontier_predicate"] = L.frontier_predicate;
  j["frontier_detail"] = L.frontier_detail;
  return j;
}

ParameterLedger ledger_from_json(const Json& j) {
  ParameterLedger L;
  L.h0 = parse_hexfloat(j.at("h0").get<std::string>());
  L.M = parse_hexfloat(j.at("M").get<std::string>());
  L.a_cap = BigInt(j.at("a_cap").get<std::string>());
  L.alpha.preset = j.at("alpha_preset").get<std::string>();
  for (const Json& s : j.at("stages")) L.stages.push_back(stage_from_json(s));
  for (const Json& r : j.at("records")) {
    PredicateRecord rec;
    rec.name = r.at("name").get<std::string>();
    rec.statement = r.at("statement").get<std::string>();
    rec.grid = r.at("grid").get<std::string>();
    rec.margin = parse_hexfloat(r.at("margin").get<std::string>());
    rec.pass = r.at("pass").get<bool>();
    L.records.push_back(rec);
  }
  L.frontier_hit = j.at("frontier_hit").get<bool>();
  L.frontier_stage = j.at("frontier_stage").get<int>();
  L.frontier_predicate = j.at("frontier_predicate").get<std::string>();
  L.frontier_detail = j.at("frontier_detail").get<std::string>();
  return L;
}

Json atlas_to_json(const CombAtlas& atlas) {
  Json j;
  j["depth"] = atlas.depth;
  Json grid = Json::array();
  for (double t : atlas.t_grid) grid.push_back(hexfloat(t));
  j["t_grid"] = grid;
  Json curves = Json::array();
  for (const CombCurve& c : atlas.curves) {
    Json e;
    e["prefix"] = c.prefix;
    e["x"] = rat_to_json(c.x_value);
    e["theta"] = rat_to_json(c.theta);
    Json samples = Json::array();
    for (const CurveSample& s : c.samples) {
      Json q;
      q["t"] = hexfloat(s.t);
      q["re"] = hexfloat(s.sigma.real());
      q["d1"] = Json::array({hexfloat(s.d1.real()), hexfloat(s.d1.imag())});
      q["d2"] = Json::array({hexfloat(s.d2.real()), hexfloat(s.d2.imag())});
      q["d3"] = Json::array({hexfloat(s.d3.real()), hexfloat(s.d3.imag())});
      q["jets_ok"] = s.jets_ok;
      samples.push_back(q);
    }
    e["samples"] = samples;
    curves.push_back(e);
  }
  j["curves"] = curves;
  return j;
}

CombAtlas atlas_from_json(const Json& j) {
  CombAtlas atlas;
  atlas.depth = j.at("depth").get<int>();
  for (const Json& t : j.at("t_grid"))
    atlas.t_grid.push_back(parse_hexfloat(t.get<std::string>()));
  for (const Json& e : j.at("curves")) {
    CombCurve c;
    c.prefix = e.at("prefix").get<std::vector<int>>();
    c.x_value = rat_from_json(e.at("x"));
    c.theta = rat_from_json(e.at("theta"));
    for (const Json& q : e.at("samples")) {
      CurveSample s;
      s.t = parse_hexfloat(q.at("t").get<std::string>());
      s.sigma = {parse_hexfloat(q.at("re").get<std::string>()), s.t};
      s.d1 = {parse_hexfloat(q.at("d1").at(0).get<std::string>()),
              parse_hexfloat(q.at("d1").at(1).get<std::string>())};
      s.d2 = {parse_hexfloat(q.at("d2").at(0).get<std::string>()),
              parse_hexfloat(q.at("d2").at(1).get<std::string>())};
      s.d3 = {parse_hexfloat(q.at("d3").at(0).get<std::string>()),
              parse_hexfloat(q.at("d3").at(1).get<std::string>())};
      s.jets_ok = q.at("jets_ok").get<bool>();
      c.samples.push_back(s);
    }
    atlas.curves.push_back(c);
  }
  return atlas;
}

Json report_to_json(const RunConfig& cfg, const ParameterLedger& L,
                    const VerificationReport& rep) {
  Json j;
  j["config"] = config_to_json(cfg);
  j["ledger"] = ledger_to_json(L);
  Json checks = Json::array();
  for (const CheckResult& c : rep.checks) {
    Json e;
    e["name"] = c.name;
    e["statement"] = c.statement;
    e["grid"] = c.grid;
    e["worst"] = hexfloat(c.worst);
    e["tolerance"] = hexfloat(c.tolerance);
    e["pass"] = c.pass;
    if (!c.note.empty()) e["note"] = c.note;
    checks.push_back(e);
  }
  j["checks"] = checks;
  Json consts;
  for (const auto& [k, v] : rep.constants) consts[k] = hexfloat(v);
  j["constants"] = consts;
  j["all_pass"] = rep.all_pass;
  return j;
}

std::string curves_csv(const CombAtlas& atlas) {
  std::ostringstream os;
  os << "prefix,t,re,im,d1_re,d1_im\n";
  for (const CombCurve& c : atlas.curves) {
    std::string pfx;
    for (int d : c.prefix) {
      if (!pfx.empty()) pfx += ';';
      pfx += std::to_string(d);
    }
    if (pfx.empty()) pfx = "()";
    for (const CurveSample& s : c.samples) {
      os << pfx << ',' << hexfloat(s.t) << ',' << hexfloat(s.sigma.real())
         << ',' << hexfloat(s.sigma.imag()) << ',' << hexfloat(s.d1.real())
         << ',' << hexfloat(s.d1.imag()) << '\n';
    }
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tubelog
