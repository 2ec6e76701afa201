#include "uppe/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>

namespace uppe {

namespace {

using json = nlohmann::ordered_json;

std::ofstream open_out(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

void put_f32(std::string& buf, float v) {
  // Shifts pick bytes by value, so the output is little-endian on any host.
  const std::uint32_t u = std::bit_cast<std::uint32_t>(v);
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((u >> (8 * i)) & 0xFFu));
}

float get_f32(const unsigned char* p) {
  std::uint32_t u = 0;
  for (int i = 0; i < 4; ++i) u |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return std::bit_cast<float>(u);
}

const char* rep_name(Rep r) { return r == Rep::physical ? "physical" : "spectral"; }

json sidecar_for(const std::string& bin_name, const std::array<std::size_t, 4>& shape, const GridSpec& g,
                 const RepTags& rep) {
  json j;
  j["format"] = "complex64";
  j["byte_order"] = "little";
  j["layout"] = "row-major, t fastest, interleaved re/im float32";
  j["data"] = bin_name;
  j["shape"] = shape;
  j["axes"] = {"x", "y", "z", "t"};
  j["rep"] = {rep_name(rep[0]), rep_name(rep[1]), rep_name(rep[2]), rep_name(rep[3])};
  j["steps"] = g.d;
  j["spectral_steps"] = {g.spectral_step(Axis::x), g.spectral_step(Axis::y), g.spectral_step(Axis::z),
                         g.spectral_step(Axis::t)};
  j["c"] = g.c;
  j["coordinate"] = "(j - n/2) * step, per axis; spectral axes use spectral_steps";
  return j;
}

std::filesystem::path write_samples(const std::filesystem::path& dir, const std::string& name,
                                    const std::array<std::size_t, 4>& shape, const std::vector<cplx>& values,
                                    json sidecar) {
  std::string buf;
  buf.reserve(values.size() * 8);
  for (const auto& v : values) {
    put_f32(buf, static_cast<float>(v.real()));
    put_f32(buf, static_cast<float>(v.imag()));
  }
  const auto bin = dir / (name + ".bin");
  auto out = open_out(bin);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  finish(out, bin);
  sidecar["shape"] = shape;
  const auto side = dir / (name + ".json");
  write_json(side, sidecar);
  return side;
}

}  // namespace

std::filesystem::path write_field(const std::filesystem::path& dir, const std::string& name, const Field& f,
                                  const json& extra) {
  json side = sidecar_for(name + ".bin", f.grid().n, f.grid(), f.rep());
  for (const auto& [k, v] : extra.items()) side[k] = v;
  return write_samples(dir, name, f.grid().n, f.values(), std::move(side));
}

std::filesystem::path write_z_slice(const std::filesystem::path& dir, const std::string& name, const Field& f,
                                    std::size_t iz) {
  const auto& g = f.grid();
  if (f.rep(Axis::z) != Rep::physical) throw ContractError("write_z_slice needs physical z");
  if (iz >= g.n[2]) throw std::out_of_range("z slice index out of range");
  const std::array<std::size_t, 4> shape{g.n[0], g.n[1], 1, g.n[3]};
  std::vector<cplx> values;
  values.reserve(g.n[0] * g.n[1] * g.n[3]);
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t it = 0; it < g.n[3]; ++it) values.push_back(f(ix, iy, iz, it));
  json side = sidecar_for(name + ".bin", shape, g, f.rep());
  side["z"] = g.coord(Axis::z, iz);
  side["z_index"] = iz;
  side["coordinate"] = "(j - n/2) * step for x, y, t; the single z sample sits at z";
  return write_samples(dir, name, shape, values, std::move(side));
}

LoadedField read_field(const std::filesystem::path& sidecar) {
  std::ifstream in(sidecar, std::ios::binary);
  if (!in) throw IoError("cannot read '" + sidecar.string() + "'");
  LoadedField out;
  try {
    out.sidecar = json::parse(in);
    out.shape = out.sidecar.at("shape").get<std::array<std::size_t, 4>>();
    out.steps = out.sidecar.at("steps").get<std::array<double, 4>>();
    out.c = out.sidecar.at("c").get<double>();
    const auto reps = out.sidecar.at("rep").get<std::array<std::string, 4>>();
    for (int k = 0; k < 4; ++k) out.rep[k] = reps[k] == "spectral" ? Rep::spectral : Rep::physical;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed sidecar '" + sidecar.string() + "': " + e.what());
  }
  const auto bin = sidecar.parent_path() / out.sidecar.at("data").get<std::string>();
  std::ifstream data(bin, std::ios::binary);
  if (!data) throw IoError("cannot read '" + bin.string() + "'");
  const std::size_t count = out.shape[0] * out.shape[1] * out.shape[2] * out.shape[3];
  std::vector<unsigned char> raw(count * 8);
  data.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(data.gcount()) != raw.size()) throw IoError("'" + bin.string() + "' is truncated");
  out.values.resize(count);
  for (std::size_t i = 0; i < count; ++i)
    out.values[i] = cplx(get_f32(&raw[8 * i]), get_f32(&raw[8 * i + 4]));
  return out;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::string text;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text.push_back(',');
      text += csv_escape(cells[i]);
    }
    text += "\r\n";
  };
  line(header);
  for (const auto& r : rows) {
    if (r.size() != header.size()) throw std::invalid_argument("csv row width differs from header");
    line(r);
  }
  write_text(path, text);
}

std::string format_double(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_out(path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  finish(out, path);
}

}  // namespace uppe
