#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <optional>
#include <set>

#include "superstyle/color.hpp"
#include "superstyle/errors.hpp"
#include "superstyle/gsas.hpp"
#include "superstyle/json_io.hpp"
#include "superstyle/losses.hpp"
#include "superstyle/mask_slic.hpp"
#include "superstyle/mixer.hpp"
#include "superstyle/spse.hpp"

namespace py = pybind11;
using namespace superstyle;

namespace {

using ByteArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;
using LabelArray = py::array_t<std::uint16_t, py::array::c_style | py::array::forcecast>;
using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

RgbImage to_image(const ByteArray& arr) {
  if (arr.ndim() != 3 || arr.shape(2) != 3) throw std::invalid_argument("image must have shape (H, W, 3)");
  const int h = static_cast<int>(arr.shape(0)), w = static_cast<int>(arr.shape(1));
  return RgbImage(w, h, std::vector<std::uint8_t>(arr.data(), arr.data() + arr.size()));
}

SemanticMask to_mask(const LabelArray& arr, std::optional<int> label_count) {
  if (arr.ndim() != 2) throw std::invalid_argument("mask must have shape (H, W)");
  const int h = static_cast<int>(arr.shape(0)), w = static_cast<int>(arr.shape(1));
  std::vector<std::uint16_t> labels(arr.data(), arr.data() + arr.size());
  if (label_count) return SemanticMask(w, h, *label_count, std::move(labels));
  return SemanticMask::from_labels(w, h, std::move(labels));
}

py::array_t<std::uint8_t> from_image(const RgbImage& img) {
  py::array_t<std::uint8_t> out({img.height, img.width, 3});
  std::memcpy(out.mutable_data(), img.data.data(), img.data.size());
  return out;
}

py::array_t<double> vector_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> square_array(const std::vector<double>& v, std::size_t n) {
  py::array_t<double> out({static_cast<py::ssize_t>(n), static_cast<py::ssize_t>(n)});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::vector<double> to_vector(const DoubleArray& arr) {
  if (arr.ndim() != 1) throw std::invalid_argument("expected a 1-D array");
  return {arr.data(), arr.data() + arr.size()};
}

FeatureStack to_stack(const std::vector<DoubleArray>& layers) {
  FeatureStack stack;
  for (const auto& arr : layers) {
    if (arr.ndim() != 3) throw std::invalid_argument("feature maps must have shape (C, H, W)");
    stack.emplace_back(static_cast<int>(arr.shape(0)), static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(2)),
                       std::vector<double>(arr.data(), arr.data() + arr.size()));
  }
  return stack;
}

SlicOptions slic_options(int k, int iterations, double compactness, bool windowed_search) {
  return SlicOptions{k, iterations, compactness, windowed_search};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Superpixel-based style codes with graphical self-attention refinement.";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto dims = py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
  py::register_exception<CodeLengthMismatch>(m, "CodeLengthMismatch", dims.ptr());
  py::register_exception<ShapeMismatch>(m, "ShapeMismatch", dims.ptr());
  py::register_exception<LengthMismatch>(m, "LengthMismatch", dims.ptr());
  py::register_exception<EmptyLabel>(m, "EmptyLabel", base.ptr());
  py::register_exception<EmptyInput>(m, "EmptyInput", base.ptr());
  py::register_exception<NonFinite>(m, "NonFinite", base.ptr());
  py::register_exception<LabelAbsentInDonor>(m, "LabelAbsentInDonor", base.ptr());
  py::register_exception<SchemaError>(m, "SchemaError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  m.def("rgb_to_lab", [](int r, int g, int b) {
    if (r < 0 || r > 255 || g < 0 || g > 255 || b < 0 || b > 255) throw py::value_error("channels must be 0..255");
    return srgb_to_lab(static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(b));
  });
  m.def("lab_to_rgb", [](double l, double a, double b) { return lab_to_rgb({l, a, b}); });
  m.def(
      "rgb_to_labxy",
      [](const ByteArray& image, double spatial_weight) {
        const LabXyImage lab = rgb_to_labxy(to_image(image), spatial_weight);
        py::array_t<double> out({lab.height, lab.width, 5});
        std::copy(lab.data.begin(), lab.data.end(), out.mutable_data());
        return out;
      },
      py::arg("image"), py::arg("spatial_weight") = 1.0);

  py::class_<LabelCode>(m, "LabelCode")
      .def_readonly("id", &LabelCode::id)
      .def_readonly("present", &LabelCode::present)
      .def_property_readonly("raw", [](const LabelCode& l) { return vector_array(l.raw); })
      .def_property_readonly("code", [](const LabelCode& l) { return vector_array(l.code); });

  py::class_<StyleCodes>(m, "StyleCodes")
      .def_readonly("n", &StyleCodes::n)
      .def_readonly("k", &StyleCodes::k)
      .def_readonly("labels", &StyleCodes::labels)
      .def("to_json", [](const StyleCodes& c) { return codes_to_json(c); })
      .def_static("from_json", [](const std::string& text) { return codes_from_json(text); })
      .def("__eq__", [](const StyleCodes& a, const StyleCodes& b) { return a == b; })
      .def("__len__", [](const StyleCodes& c) { return c.labels.size(); });

  py::class_<GsasParams>(m, "GsasParams")
      .def(py::init([](double w1, double w2, double bias, double leaky_slope) {
             GsasParams p{w1, w2, bias, leaky_slope};
             validate(p);
             return p;
           }),
           py::arg("w1") = 0.0, py::arg("w2") = 0.0, py::arg("bias") = 0.0, py::arg("leaky_slope") = 0.2)
      .def_static("random", &random_params, py::arg("seed"))
      .def_readonly("w1", &GsasParams::w1)
      .def_readonly("w2", &GsasParams::w2)
      .def_readonly("bias", &GsasParams::bias)
      .def_readonly("leaky_slope", &GsasParams::leaky_slope);

  m.def(
      "cluster",
      [](const ByteArray& image, const LabelArray& mask, int k, int iterations, double compactness,
         bool windowed_search, std::optional<int> label_count) {
        const SemanticMask sm = to_mask(mask, label_count);
        const SuperpixelMap map = cluster(rgb_to_labxy(to_image(image), 1.0), sm,
                                          slic_options(k, iterations, compactness, windowed_search));
        py::array_t<std::uint16_t> ids({sm.height(), sm.width()});
        const auto flat = map.global_ids(sm);
        std::copy(flat.begin(), flat.end(), ids.mutable_data());
        py::list counts, history;
        for (const auto& l : map.labels) {
          counts.append(l.cluster_count());
          history.append(l.objective_history);
        }
        py::dict out;
        out["ids"] = ids;
        out["cluster_counts"] = counts;
        out["objective_history"] = history;
        return out;
      },
      py::arg("image"), py::arg("mask"), py::arg("k") = kDefaultSuperpixels, py::arg("iterations") = kDefaultIterations,
      py::arg("compactness") = kDefaultCompactness, py::arg("windowed_search") = false,
      py::arg("label_count") = py::none());

  m.def(
      "encode",
      [](const ByteArray& image, const LabelArray& mask, int k, int n, int iterations, double compactness,
         bool windowed_search, std::optional<int> label_count) {
        return encode_style(to_image(image), to_mask(mask, label_count),
                            slic_options(k, iterations, compactness, windowed_search), n);
      },
      py::arg("image"), py::arg("mask"), py::arg("k") = kDefaultSuperpixels, py::arg("n") = kDefaultCodeLength,
      py::arg("iterations") = kDefaultIterations, py::arg("compactness") = kDefaultCompactness,
      py::arg("windowed_search") = false, py::arg("label_count") = py::none());

  m.def(
      "resample_code", [](const DoubleArray& raw, int n) { return vector_array(resample_code(to_vector(raw), n)); },
      py::arg("raw"), py::arg("n"));

  m.def(
      "gsas_forward",
      [](const DoubleArray& a, const GsasParams& params, bool average) {
        const AttentionTrace t = gsas_forward(to_vector(a), params, {average});
        py::dict out;
        out["e"] = square_array(t.e, t.n);
        out["s"] = square_array(t.s, t.n);
        out["a_prime"] = vector_array(t.a_prime);
        out["output"] = vector_array(t.output);
        return out;
      },
      py::arg("a"), py::arg("params"), py::arg("average") = true);

  m.def(
      "gsas_backward",
      [](const DoubleArray& a, const GsasParams& params, const DoubleArray& upstream, bool average) {
        const GsasGradients g = gsas_backward(to_vector(a), params, to_vector(upstream), {average});
        py::dict out;
        out["a"] = vector_array(g.a);
        out["w1"] = g.w1;
        out["w2"] = g.w2;
        out["bias"] = g.bias;
        return out;
      },
      py::arg("a"), py::arg("params"), py::arg("upstream"), py::arg("average") = true);

  m.def(
      "gsas_refine_codes",
      [](const StyleCodes& codes, const GsasParams& params, bool average) {
        return gsas_refine_codes(codes, params, {average});
      },
      py::arg("codes"), py::arg("params"), py::arg("average") = true);

  m.def(
      "perceptual_loss",
      [](const std::vector<DoubleArray>& real, const std::vector<DoubleArray>& fake) {
        return perceptual_loss(to_stack(real), to_stack(fake));
      },
      py::arg("real"), py::arg("fake"));
  m.def(
      "feature_matching_loss",
      [](const std::vector<std::vector<DoubleArray>>& real, const std::vector<std::vector<DoubleArray>>& fake) {
        std::vector<FeatureStack> r, f;
        for (const auto& s : real) r.push_back(to_stack(s));
        for (const auto& s : fake) f.push_back(to_stack(s));
        return feature_matching_loss(r, f);
      },
      py::arg("real_per_scale"), py::arg("fake_per_scale"));
  m.def(
      "hinge_d_loss",
      [](const DoubleArray& d_real, const DoubleArray& d_fake) {
        return hinge_d_loss(to_vector(d_real), to_vector(d_fake));
      },
      py::arg("d_real"), py::arg("d_fake"));
  m.def(
      "hinge_g_loss", [](const DoubleArray& d_fake) { return hinge_g_loss(to_vector(d_fake)); }, py::arg("d_fake"));
  m.def(
      "total_loss",
      [](double percept, const std::vector<double>& fm, const std::vector<double>& adv, double alpha, double beta) {
        return total_loss(percept, fm, adv, alpha, beta);
      },
      py::arg("percept"), py::arg("fm_per_scale"), py::arg("adv_per_scale"),
      py::arg("alpha") = kDefaultPerceptualWeight, py::arg("beta") = kDefaultFeatureMatchingWeight);

  m.def(
      "swap_codes",
      [](const StyleCodes& source, const StyleCodes& style, const std::set<int>& labels) {
        return swap_codes(source, style, labels);
      },
      py::arg("source"), py::arg("style"), py::arg("labels"));
  m.def(
      "mix_codes",
      [](const std::vector<std::pair<int, int>>& assignments, const std::vector<StyleCodes>& donors) {
        MixRecipe recipe;
        for (const auto& [label, donor] : assignments) recipe.assignments.push_back({label, donor});
        return mix_codes(recipe, donors);
      },
      py::arg("assignments"), py::arg("donors"));
  m.def(
      "coarse_reconstruct",
      [](const StyleCodes& codes, const LabelArray& ids, const LabelArray& mask) {
        const SemanticMask sm = to_mask(mask, codes.label_count());
        if (ids.ndim() != 2 || ids.shape(0) != sm.height() || ids.shape(1) != sm.width())
          throw DimensionMismatch("id map and mask shapes differ");
        const std::vector<std::uint16_t> flat(ids.data(), ids.data() + ids.size());
        return from_image(coarse_reconstruct(codes, superpixel_map_from_ids(flat, sm), sm));
      },
      py::arg("codes"), py::arg("ids"), py::arg("mask"));
}
