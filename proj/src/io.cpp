#include "photon/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "photon/errors.hpp"

namespace photon {

namespace {

using nlohmann::json;

json grid_header(const KGrid& g) {
  return {{"center", {g.center.x(), g.center.y(), g.center.z()}},
          {"half_width", {g.half_width.x(), g.half_width.y(), g.half_width.z()}},
          {"n", g.n},
          {"gauge", {g.gauge_I.x(), g.gauge_I.y(), g.gauge_I.z()}},
          {"eps_cone", g.eps_cone},
          {"eps_k", g.eps_k}};
}

Vec3 vec3_of(const json& j) { return Vec3(j.at(0), j.at(1), j.at(2)); }

std::shared_ptr<const KGrid> grid_of(const json& h) {
  std::array<int, 3> n = h.at("n");
  return build_grid(vec3_of(h.at("center")), vec3_of(h.at("half_width")), n,
                    vec3_of(h.at("gauge")), h.at("eps_cone"), h.at("eps_k"));
}

template <int N>
void save_impl(const KGrid& grid, const Field<Eigen::Matrix<Complex, N, 1>>& field,
               json header, const std::filesystem::path& path) {
  std::ostringstream out;
  out.precision(17);
  out << header.dump() << "\n";
  for (std::size_t q = 0; q < grid.size(); ++q) {
    const auto ijl = grid.unravel(q);
    out << ijl[0] << "," << ijl[1] << "," << ijl[2] << ","
        << int(field.ok[q]);
    for (int c = 0; c < N; ++c)
      out << "," << field.v[q][c].real() << "," << field.v[q][c].imag();
    out << "\n";
  }
  atomic_write(path, out.str());
}

template <int N>
void load_body(std::istream& in, Field<Eigen::Matrix<Complex, N, 1>>& field) {
  const KGrid& g = *field.grid;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string tok;
    auto next = [&]() -> double {
      if (!std::getline(row, tok, ',')) throw GridError("short CSV row");
      return std::stod(tok);
    };
    const int i = int(next()), j = int(next()), l = int(next());
    const std::size_t q = g.index(i, j, l);
    field.ok[q] = next() != 0.0 ? 1 : 0;
    for (int c = 0; c < N; ++c) {
      const double re = next(), im = next();
      field.v[q][c] = Complex(re, im);
    }
  }
}

}  // namespace

void save_state(const TwoComponentWavefunction& ft,
                const std::filesystem::path& path) {
  json h = grid_header(*ft.grid);
  h["kind"] = "two_component";
  h["state_gauge"] = {ft.gauge.I.x(), ft.gauge.I.y(), ft.gauge.I.z()};
  h["time"] = ft.time;
  save_impl<2>(*ft.grid, ft.values, h, path);
}

void save_state(const VectorWavefunction& f,
                const std::filesystem::path& path) {
  json h = grid_header(*f.grid);
  h["kind"] = "vector";
  h["time"] = f.time;
  save_impl<3>(*f.grid, f.values, h, path);
}

TwoComponentWavefunction load_two_component(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GridError("cannot open " + path.string());
  std::string header;
  std::getline(in, header);
  const json h = json::parse(header);
  if (h.at("kind") != "two_component")
    throw GridError("file does not hold a two-component state");
  auto grid = grid_of(h);
  TwoComponentWavefunction ft{grid, BerryGauge(vec3_of(h.at("state_gauge"))),
                              SpinorField2(grid), h.at("time")};
  load_body<2>(in, ft.values);
  return ft;
}

VectorWavefunction load_vector(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GridError("cannot open " + path.string());
  std::string header;
  std::getline(in, header);
  const json h = json::parse(header);
  if (h.at("kind") != "vector") throw GridError("file does not hold a vector state");
  auto grid = grid_of(h);
  VectorWavefunction f{grid, VectorField3(grid), h.at("time")};
  load_body<3>(in, f.values);
  return f;
}

void atomic_write(const std::filesystem::path& path, const std::string& body) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw GridError("cannot write " + tmp);
    out << body;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace photon
