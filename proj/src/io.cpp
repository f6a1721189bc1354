#include "flatfront/io.hpp"

#include <fstream>

namespace flatfront {

Json moduli_to_json(const CanonicalModuli& mod) {
  Json j;
  j["r"] = mod.r;
  j["s"] = mod.s;
  j["m"] = mod.m;
  j["z0"] = mod.z0;
  j["z1"] = mod.z1;
  j["z2"] = mod.z2;
  j["c1"] = mod.c1;
  j["c2"] = mod.c2;
  j["a_R"] = mod.a_R;
  j["b_R"] = mod.b_R;
  j["c_height"] = mod.c_height;
  return j;
}

CanonicalModuli moduli_from_json(const Json& j) {
  if (!j.is_object()) throw IoError("moduli document is not a JSON object");
  auto get = [&](const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number()) throw IoError(std::string("moduli field missing or not a number: ") + key);
    return it->get<double>();
  };
  CanonicalModuli mod;
  mod.r = get("r");
  mod.s = get("s");
  mod.m = get("m");
  mod.z0 = get("z0");
  mod.z1 = get("z1");
  mod.z2 = get("z2");
  mod.c1 = get("c1");
  mod.c2 = get("c2");
  mod.a_R = get("a_R");
  mod.b_R = get("b_R");
  mod.c_height = get("c_height");
  if (!(mod.r > 0.0 && mod.r < 1.0)) throw IoError("moduli field r outside (0, 1)");
  return mod;
}

namespace {

Json root_to_json(const RootResult& rr) {
  Json j;
  j["x"] = rr.x;
  j["fx"] = rr.fx;
  j["bracket"] = {rr.lo, rr.hi};
  j["bisections"] = rr.bisections;
  j["secant_steps"] = rr.secant_steps;
  return j;
}

}  // namespace

Json trace_to_json(const SolverTrace& t) {
  Json j;
  j["m_root"] = root_to_json(t.m_root);
  j["outer_root"] = root_to_json(t.outer_root);
  j["inner_solves"] = t.inner_solves;
  j["inner_iterations"] = t.inner_iterations;
  j["outer_scan_steps"] = t.outer_scan_steps;
  j["outer_sign_changes"] = t.outer_sign_changes;
  j["residuals"] = {t.residuals[0], t.residuals[1], t.residuals[2]};
  j["rs_ok"] = t.rs_ok;
  j["ordering_ok"] = t.ordering_ok;
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path + " for writing");
  os << j.dump(2) << '\n';
  if (!os) throw IoError("write failed: " + path);
}

Json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path);
  Json j = Json::parse(is, nullptr, false);
  if (j.is_discarded()) throw IoError("not valid JSON: " + path);
  return j;
}

CanonicalModuli read_moduli_file(const std::string& path) { return moduli_from_json(read_json_file(path)); }

}  // namespace flatfront
