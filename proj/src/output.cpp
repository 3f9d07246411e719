#include "rotor/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace rotor::output {
namespace {

std::string channel_label(const ChannelKey& c) {
  return "sigma_" + std::to_string(c.l_in) + "_" + std::to_string(c.l_out);
}

void escape(std::string& out, const std::string& s) {
  out += '"';
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

void dump(std::string& out, const nlohmann::json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        escape(out, it.key());
        out += indent < 0 ? ":" : ": ";
        dump(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Numeric arrays stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const auto& v) { return v.is_number(); });
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        dump(out, v, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case nlohmann::json::value_t::string:
      escape(out, j.get<std::string>());
      return;
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_real(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_json(const nlohmann::json& doc, int indent) {
  std::string out;
  dump(out, doc, indent, 0);
  out += '\n';
  return out;
}

std::string profile_csv(const CrossSectionProfile& profile) {
  std::string out = "theta,sigma";
  for (const auto& c : profile.channels) out += "," + channel_label(c);
  out += '\n';
  for (std::size_t i = 0; i < profile.thetas.size(); ++i) {
    out += format_real(profile.thetas[i]);
    out += ',';
    out += format_real(profile.sigma[i]);
    for (const auto& column : profile.per_channel) {
      out += ',';
      out += format_real(column[i]);
    }
    out += '\n';
  }
  return out;
}

std::string sweep_csv(const SweepMatrix& sweep) {
  std::string out = "theta";
  for (const double k : sweep.ks) out += ",k=" + format_real(k);
  out += '\n';
  for (std::size_t i = 0; i < sweep.thetas.size(); ++i) {
    out += format_real(sweep.thetas[i]);
    for (const double v : sweep.sigma[i]) {
      out += ',';
      out += format_real(v);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json profile_json(const CrossSectionProfile& profile) {
  nlohmann::json j;
  j["variant"] = std::string(to_string(profile.metadata.variant));
  j["theta"] = profile.thetas;
  j["sigma"] = profile.sigma;
  if (!profile.channels.empty()) {
    auto channels = nlohmann::json::array();
    for (std::size_t c = 0; c < profile.channels.size(); ++c) {
      channels.push_back({{"l_in", profile.channels[c].l_in},
                          {"l_out", profile.channels[c].l_out},
                          {"sigma", profile.per_channel[c]}});
    }
    j["channels"] = channels;
  }
  return j;
}

nlohmann::json sweep_json(const SweepMatrix& sweep) {
  return {{"variant", std::string(to_string(sweep.variant))},
          {"theta", sweep.thetas},
          {"k", sweep.ks},
          {"sigma", sweep.sigma}};
}

nlohmann::json fringe_json(const analysis::FringeReport& report) {
  return {{"visibility", report.visibility},
          {"peak_thetas", report.peak_thetas},
          {"mean_spacing", report.mean_spacing},
          {"window", {report.window.lo, report.window.hi}}};
}

nlohmann::json check_json(const validation::CheckResult& r) {
  return {{"name", r.name},
          {"passed", r.passed},
          {"samples", r.samples},
          {"failures", r.failures},
          {"worst_relative", r.worst_relative},
          {"worst_absolute", r.worst_absolute},
          {"rel_tol", r.rel_tol},
          {"abs_tol", r.abs_tol},
          {"detail", r.detail}};
}

namespace {

constexpr double kWidth = 640, kHeight = 400, kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string svg_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

std::string frame(const std::string& title, const std::string& x_label,
                  const std::string& y_label, double x0, double x1, double y0, double y1) {
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << num(kWidth / 2) << "\" y=\"20\" text-anchor=\"middle\">"
    << svg_escape(title) << "</text>\n"
    << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << kWidth - kRight
    << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
    << kHeight - kBottom << "\" stroke=\"black\"/>\n"
    << "<text x=\"" << kLeft << "\" y=\"" << kHeight - kBottom + 16 << "\" text-anchor=\"middle\">"
    << tick(x0) << "</text>\n"
    << "<text x=\"" << kWidth - kRight << "\" y=\"" << kHeight - kBottom + 16
    << "\" text-anchor=\"middle\">" << tick(x1) << "</text>\n"
    << "<text x=\"" << kLeft - 6 << "\" y=\"" << kHeight - kBottom << "\" text-anchor=\"end\">"
    << tick(y0) << "</text>\n"
    << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + 4 << "\" text-anchor=\"end\">" << tick(y1)
    << "</text>\n"
    << "<text x=\"" << num(kLeft + (kWidth - kLeft - kRight) / 2) << "\" y=\"" << kHeight - 12
    << "\" text-anchor=\"middle\">" << svg_escape(x_label) << "</text>\n"
    << "<text x=\"16\" y=\"" << num(kTop + (kHeight - kTop - kBottom) / 2)
    << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << num(kTop + (kHeight - kTop - kBottom) / 2) << ")\">" << svg_escape(y_label) << "</text>\n";
  return s.str();
}

}  // namespace

std::string profiles_svg(const std::vector<const CrossSectionProfile*>& profiles,
                         const std::string& title) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y1 = 0.0;
  for (const auto* p : profiles) {
    if (p->thetas.empty()) continue;
    x0 = std::min(x0, p->thetas.front());
    x1 = std::max(x1, p->thetas.back());
    for (const double v : p->sigma) {
      if (std::isfinite(v)) y1 = std::max(y1, v);
    }
  }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > 0.0)) y1 = 1.0;
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  std::string out = frame(title, "theta", "sigma", x0, x1, 0.0, y1);
  std::size_t index = 0;
  for (const auto* p : profiles) {
    const char* color = kColors[index % 4];
    out += "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < p->thetas.size(); ++i) {
      const double v = std::isfinite(p->sigma[i]) ? p->sigma[i] : 0.0;
      out += num(kLeft + pw * (p->thetas[i] - x0) / (x1 - x0));
      out += ',';
      out += num(kTop + ph * (1.0 - v / y1));
      out += ' ';
    }
    out += "\"/>\n";
    out += "<text x=\"" + num(kWidth - kRight - 4) + "\" y=\"" + num(kTop + 14.0 * (index + 1)) +
           "\" text-anchor=\"end\" fill=\"" + color + "\">" +
           svg_escape(std::string(to_string(p->metadata.variant))) + "</text>\n";
    ++index;
  }
  out += "</svg>\n";
  return out;
}

std::string sweep_svg(const SweepMatrix& sweep, const std::string& title) {
  const double k0 = sweep.ks.front(), k1 = sweep.ks.back();
  const double t0 = sweep.thetas.front(), t1 = sweep.thetas.back();
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& row : sweep.sigma) {
    for (const double v : row) {
      if (v > 0.0 && std::isfinite(v)) top = std::max(top, std::log10(v));
    }
  }
  const double span = 6.0;  // decades shown
  std::string out = frame(title, "k", "theta", k0, k1, t0, t1);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const double cw = pw / static_cast<double>(sweep.ks.size());
  const double ch = ph / static_cast<double>(sweep.thetas.size());
  for (std::size_t i = 0; i < sweep.thetas.size(); ++i) {
    for (std::size_t j = 0; j < sweep.ks.size(); ++j) {
      const double v = sweep.sigma[i][j];
      double level = 0.0;
      if (v > 0.0 && std::isfinite(v)) level = std::clamp(1.0 + (std::log10(v) - top) / span, 0.0, 1.0);
      const int grey = static_cast<int>(std::lround(255.0 * (1.0 - level)));
      char fill[8];
      std::snprintf(fill, sizeof fill, "#%02x%02x%02x", grey, grey, grey);
      out += "<rect x=\"" + num(kLeft + cw * j) + "\" y=\"" +
             num(kTop + ph - ch * static_cast<double>(i + 1)) + "\" width=\"" + num(cw + 0.05) +
             "\" height=\"" + num(ch + 0.05) + "\" fill=\"" + fill + "\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace rotor::output
