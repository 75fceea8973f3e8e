#include "bcosfire/bcosfire.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "core/cosfire.hpp"
#include "core/eval.hpp"
#include "core/image.hpp"
#include "core/image_io.hpp"
#include "core/parallel.hpp"
#include "core/postproc.hpp"
#include "core/synth.hpp"
#include "core/types.hpp"

struct bcf_image {
  bcos::GrayImage img;
};
struct bcf_mask {
  bcos::BinaryMap map;
};
struct bcf_tupleset {
  bcos::TupleSet set;
};
struct bcf_prepared {
  bcos::Prepared prepared;
  bcf_image response_view;     // normalized response
  bcf_image orientation_view;  // indices as doubles
  bcf_image thinned_view;
};
struct bcf_sweep_result {
  bcos::SweepResult result;
};

namespace {

thread_local std::string tl_last_error;

bcf_status fail(bcf_status code, const char* what) {
  tl_last_error = what != nullptr ? what : "";
  return code;
}

bcf_status from_error(const bcos::Error& e) {
  switch (e.code()) {
    case bcos::Err::Io:
      return fail(BCF_ERROR_IO, e.what());
    case bcos::Err::Format:
      return fail(BCF_ERROR_FORMAT, e.what());
    case bcos::Err::Param:
      return fail(BCF_ERROR_PARAM, e.what());
    case bcos::Err::Contract:
      return fail(BCF_ERROR_CONTRACT, e.what());
    case bcos::Err::Unsupported:
      return fail(BCF_ERROR_UNSUPPORTED, e.what());
  }
  return fail(BCF_ERROR_INTERNAL, e.what());
}

// Runs fn, mapping exceptions onto status codes.
template <typename Fn>
bcf_status guarded(Fn&& fn) {
  try {
    fn();
    tl_last_error.clear();
    return BCF_OK;
  } catch (const bcos::Error& e) {
    return from_error(e);
  } catch (const std::exception& e) {
    return fail(BCF_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(BCF_ERROR_INTERNAL, "unknown error");
  }
}

bcos::CosfireParams to_core(const bcf_cosfire_params& p) {
  bcos::CosfireParams out;
  out.w = p.w;
  out.l = p.l;
  out.eta = p.eta;
  out.sigma0 = p.sigma0;
  out.alpha = p.alpha;
  out.orientations = p.orientations;
  return out;
}

bcos::Polarity to_core(bcf_polarity p) {
  return p == BCF_BRIGHT_ON_DARK ? bcos::Polarity::BrightOnDark : bcos::Polarity::DarkOnBright;
}

bcos::StimulusSpec to_core(const bcf_stimulus_spec& s) {
  bcos::StimulusSpec out;
  switch (s.kind) {
    case BCF_STIMULUS_CIRCLE:
      out.kind = bcos::StimulusKind::Circle;
      break;
    case BCF_STIMULUS_DASHED_CIRCLE:
      out.kind = bcos::StimulusKind::DashedCircle;
      break;
    case BCF_STIMULUS_GABOR_CURVE:
      out.kind = bcos::StimulusKind::GaborCurve;
      break;
    default:
      throw bcos::Error(bcos::Err::Param, "unknown stimulus kind");
  }
  out.width = s.width;
  out.height = s.height;
  out.radius = s.radius;
  out.line_width = s.line_width;
  out.gap_deg = s.gap_deg;
  out.arc_gap_ratio = s.arc_gap_ratio;
  out.noise_variance = s.noise_variance;
  out.seed = s.seed;
  out.gabor.amplitude = s.gabor_amplitude;
  out.gabor.envelope = s.gabor_envelope;
  out.gabor.period = s.gabor_period;
  return out;
}

bcf_image make_view(const bcos::GrayImage& img) {
  bcf_image v;
  v.img = img;
  return v;
}

}  // namespace

extern "C" {

const char* bcf_version(void) { return "1.0.0"; }

const char* bcf_status_name(bcf_status status) {
  switch (status) {
    case BCF_OK: return "ok";
    case BCF_ERROR_IO: return "io error";
    case BCF_ERROR_FORMAT: return "format error";
    case BCF_ERROR_PARAM: return "parameter error";
    case BCF_ERROR_CONTRACT: return "contract violation";
    case BCF_ERROR_UNSUPPORTED: return "unsupported";
    case BCF_ERROR_NULL_ARGUMENT: return "null argument";
    case BCF_ERROR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* bcf_last_error(void) { return tl_last_error.c_str(); }

void bcf_set_threads(int n) { bcos::set_threads(n); }

/* ---- images ---- */

bcf_status bcf_image_create(int width, int height, const double* data, bcf_image** out) {
  if (!out) return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_image_create: out is null");
  return guarded([&] {
    auto img = std::make_unique<bcf_image>();
    img->img = bcos::GrayImage(width, height);
    if (data) std::memcpy(img->img.data.data(), data, img->img.pixels() * sizeof(double));
    *out = img.release();
  });
}

bcf_status bcf_image_load(const char* path, bcf_image** out) {
  if (!path || !out) return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_image_load: null argument");
  return guarded([&] {
    auto img = std::make_unique<bcf_image>();
    img->img = bcos::load_image(path);
    *out = img.release();
  });
}

bcf_status bcf_image_save_png(const bcf_image* image, const char* path) {
  if (!image || !path) return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_image_save_png: null argument");
  return guarded([&] { bcos::save_png(image->img, path); });
}

int bcf_image_width(const bcf_image* image) { return image ? image->img.width : 0; }
int bcf_image_height(const bcf_image* image) { return image ? image->img.height : 0; }
const double* bcf_image_data(const bcf_image* image) {
  return image ? image->img.data.data() : nullptr;
}
void bcf_image_free(bcf_image* image) { delete image; }

/* ---- masks ---- */

bcf_status bcf_mask_create(int width, int height, const uint8_t* data, bcf_mask** out) {
  if (!out) return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_mask_create: out is null");
  return guarded([&] {
    auto m = std::make_unique<bcf_mask>();
    m->map = bcos::BinaryMap(width, height);
    if (data)
      for (size_t i = 0; i < m->map.mask.size(); ++i) m->map.mask[i] = data[i] ? 1 : 0;
    *out = m.release();
  });
}

bcf_status bcf_mask_load(const char* path, bcf_mask** out) {
  if (!path || !out) return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_mask_load: null argument");
  return guarded([&] {
    auto m = std::make_unique<bcf_mask>();
    m->map = bcos::load_mask(path);
    *out = m.release();
  });
}

bcf_status bcf_mask_save_png(const bcf_mask* mask, const char* path) {
  if (!mask || !path) return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_mask_save_png: null argument");
  return guarded([&] { bcos::save_png(mask->map, path); });
}

int bcf_mask_width(const bcf_mask* mask) { return mask ? mask->map.width : 0; }
int bcf_mask_height(const bcf_mask* mask) { return mask ? mask->map.height : 0; }
const uint8_t* bcf_mask_data(const bcf_mask* mask) {
  return mask ? mask->map.mask.data() : nullptr;
}
void bcf_mask_free(bcf_mask* mask) { delete mask; }

/* ---- filter configuration ---- */

void bcf_cosfire_params_init(bcf_cosfire_params* params) {
  if (!params) return;
  params->w = 6.34;
  params->l = 29;
  params->eta = 2;
  params->sigma0 = 2.0;
  params->alpha = 1.0;
  params->orientations = 8;
}

bcf_status bcf_tupleset_configure(const bcf_cosfire_params* params, double phi,
                                  bcf_tupleset** out) {
  if (!params || !out)
    return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_tupleset_configure: null argument");
  return guarded([&] {
    auto set = std::make_unique<bcf_tupleset>();
    set->set = bcos::configure(to_core(*params), phi);
    *out = set.release();
  });
}

int bcf_tupleset_count(const bcf_tupleset* set) {
  return set ? static_cast<int>(set->set.tuples.size()) : 0;
}

bcf_status bcf_tupleset_get(const bcf_tupleset* set, int index, double* rho, double* angle) {
  if (!set || !rho || !angle) return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_tupleset_get: null argument");
  if (index < 0 || index >= static_cast<int>(set->set.tuples.size()))
    return fail(BCF_ERROR_PARAM, "bcf_tupleset_get: index out of range");
  *rho = set->set.tuples[index].rho;
  *angle = set->set.tuples[index].angle;
  return BCF_OK;
}

bcf_status bcf_tupleset_serialize(const bcf_tupleset* set, char* buffer, size_t capacity,
                                  size_t* needed) {
  if (!set || !needed) return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_tupleset_serialize: null argument");
  return guarded([&] {
    const std::string text = bcos::serialize(set->set);
    *needed = text.size();
    if (buffer && capacity > 0) {
      const size_t n = std::min(capacity - 1, text.size());
      std::memcpy(buffer, text.data(), n);
      buffer[n] = '\0';
    }
  });
}

void bcf_tupleset_free(bcf_tupleset* set) { delete set; }

/* ---- pipeline ---- */

bcf_status bcf_response(const bcf_image* image, const bcf_cosfire_params* params, double phi,
                        bcf_polarity polarity, bcf_image** out) {
  if (!image || !params || !out) return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_response: null argument");
  return guarded([&] {
    auto img = std::make_unique<bcf_image>();
    img->img = bcos::response(image->img, to_core(*params), phi, to_core(polarity));
    *out = img.release();
  });
}

bcf_status bcf_rotation_tolerant(const bcf_image* image, const bcf_cosfire_params* params,
                                 bcf_polarity polarity, bcf_image** response,
                                 bcf_image** orientation) {
  if (!image || !params || !response || !orientation)
    return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_rotation_tolerant: null argument");
  return guarded([&] {
    const bcos::ResponsePair pair =
        bcos::rotation_tolerant(image->img, to_core(*params), to_core(polarity));
    auto resp = std::make_unique<bcf_image>();
    resp->img = pair.response;
    auto orient = std::make_unique<bcf_image>();
    orient->img = bcos::GrayImage(pair.orientation.width, pair.orientation.height);
    for (size_t i = 0; i < orient->img.data.size(); ++i)
      orient->img.data[i] = static_cast<double>(pair.orientation.idx[i]);
    *response = resp.release();
    *orientation = orient.release();
  });
}

bcf_status bcf_delineate(const bcf_image* image, const bcf_cosfire_params* params, double t_h,
                         bcf_polarity polarity, bcf_mask** out) {
  if (!image || !params || !out) return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_delineate: null argument");
  return guarded([&] {
    auto m = std::make_unique<bcf_mask>();
    m->map = bcos::delineate(image->img, to_core(*params), t_h, to_core(polarity));
    *out = m.release();
  });
}

bcf_status bcf_prepare(const bcf_image* image, const bcf_cosfire_params* params,
                       bcf_polarity polarity, bcf_prepared** out) {
  if (!image || !params || !out) return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_prepare: null argument");
  return guarded([&] {
    auto p = std::make_unique<bcf_prepared>();
    p->prepared = bcos::prepare(image->img, to_core(*params), to_core(polarity));
    p->response_view = make_view(p->prepared.pair.response);
    bcos::GrayImage orient(p->prepared.pair.orientation.width,
                           p->prepared.pair.orientation.height);
    for (size_t i = 0; i < orient.data.size(); ++i)
      orient.data[i] = static_cast<double>(p->prepared.pair.orientation.idx[i]);
    p->orientation_view = make_view(orient);
    p->thinned_view = make_view(p->prepared.thinned);
    *out = p.release();
  });
}

const bcf_image* bcf_prepared_response(const bcf_prepared* prepared) {
  return prepared ? &prepared->response_view : nullptr;
}
const bcf_image* bcf_prepared_orientation(const bcf_prepared* prepared) {
  return prepared ? &prepared->orientation_view : nullptr;
}
const bcf_image* bcf_prepared_thinned(const bcf_prepared* prepared) {
  return prepared ? &prepared->thinned_view : nullptr;
}

bcf_status bcf_prepared_rethreshold(const bcf_prepared* prepared, double t_h, bcf_mask** out) {
  if (!prepared || !out)
    return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_prepared_rethreshold: null argument");
  return guarded([&] {
    auto m = std::make_unique<bcf_mask>();
    m->map = bcos::rethreshold(prepared->prepared, t_h);
    *out = m.release();
  });
}

void bcf_prepared_free(bcf_prepared* prepared) { delete prepared; }

bcf_status bcf_orientation_bandwidth(const bcf_cosfire_params* params, int probe_size,
                                     double* radians) {
  if (!params || !radians)
    return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_orientation_bandwidth: null argument");
  return guarded([&] { *radians = bcos::orientation_bandwidth(to_core(*params), probe_size); });
}

/* ---- evaluation ---- */

bcf_status bcf_match_tolerant(const bcf_mask* detected, const bcf_mask* truth, double d_star,
                              int64_t* tp, int64_t* fp, int64_t* fn) {
  if (!detected || !truth || !tp || !fp || !fn)
    return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_match_tolerant: null argument");
  return guarded([&] {
    const bcos::EvalResult r = bcos::match_tolerant(detected->map, truth->map, d_star);
    *tp = r.tp;
    *fp = r.fp;
    *fn = r.fn;
  });
}

bcf_status bcf_prf(int64_t tp, int64_t fp, int64_t fn, double* precision, double* recall,
                   double* f_measure) {
  if (!precision || !recall || !f_measure)
    return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_prf: null argument");
  return guarded([&] {
    const bcos::EvalResult r = bcos::prf(tp, fp, fn);
    *precision = r.precision;
    *recall = r.recall;
    *f_measure = r.f_measure;
  });
}

bcf_status bcf_paired_ttest(const double* a, const double* b, int n, double alpha,
                            bcf_ttest_result* out) {
  if (!a || !b || !out) return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_paired_ttest: null argument");
  if (n < 0) return fail(BCF_ERROR_PARAM, "bcf_paired_ttest: negative length");
  return guarded([&] {
    const bcos::TTestResult r = bcos::paired_ttest({a, static_cast<size_t>(n)},
                                                   {b, static_cast<size_t>(n)}, alpha);
    out->h = r.h;
    out->p = r.p;
    out->t = r.t;
    out->dof = r.dof;
  });
}

bcf_status bcf_snr(const bcf_image* response, const bcf_mask* signal, double* snr_db) {
  if (!response || !signal || !snr_db)
    return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_snr: null argument");
  return guarded([&] { *snr_db = bcos::snr_db(response->img, signal->map); });
}

bcf_status bcf_sweep(const bcf_image* const* images, const bcf_mask* const* truths, int count,
                     const bcf_cosfire_params* params, bcf_polarity polarity, double d_star,
                     bcf_sweep_result** out) {
  if (!images || !truths || !params || !out)
    return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_sweep: null argument");
  if (count <= 0) return fail(BCF_ERROR_PARAM, "bcf_sweep: empty dataset");
  for (int i = 0; i < count; ++i)
    if (!images[i] || !truths[i])
      return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_sweep: null dataset entry");
  return guarded([&] {
    std::vector<bcos::GrayImage> imgs(count);
    std::vector<bcos::BinaryMap> gts(count);
    for (int i = 0; i < count; ++i) {
      imgs[i] = images[i]->img;
      gts[i] = truths[i]->map;
    }
    auto result = std::make_unique<bcf_sweep_result>();
    result->result = bcos::sweep(imgs, gts, to_core(*params), to_core(polarity), d_star);
    *out = result.release();
  });
}

int bcf_sweep_point_count(const bcf_sweep_result* result) {
  return result ? static_cast<int>(result->result.curve.size()) : 0;
}

int bcf_sweep_best_index(const bcf_sweep_result* result) {
  return result ? result->result.best_index : 0;
}

bcf_status bcf_sweep_point(const bcf_sweep_result* result, int index, double* t_h,
                           double* mean_precision, double* mean_recall, double* mean_f) {
  if (!result || !t_h || !mean_precision || !mean_recall || !mean_f)
    return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_sweep_point: null argument");
  if (index < 0 || index >= static_cast<int>(result->result.curve.size()))
    return fail(BCF_ERROR_PARAM, "bcf_sweep_point: index out of range");
  const bcos::PrCurvePoint& pt = result->result.curve[index];
  *t_h = pt.t_h;
  *mean_precision = pt.mean_precision;
  *mean_recall = pt.mean_recall;
  *mean_f = pt.mean_f;
  return BCF_OK;
}

bcf_status bcf_sweep_image_point(const bcf_sweep_result* result, int image, int index,
                                 int64_t* tp, int64_t* fp, int64_t* fn, double* precision,
                                 double* recall, double* f_measure) {
  if (!result || !tp || !fp || !fn || !precision || !recall || !f_measure)
    return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_sweep_image_point: null argument");
  if (image < 0 || image >= static_cast<int>(result->result.per_image.size()))
    return fail(BCF_ERROR_PARAM, "bcf_sweep_image_point: image out of range");
  if (index < 0 || index >= static_cast<int>(result->result.per_image[image].size()))
    return fail(BCF_ERROR_PARAM, "bcf_sweep_image_point: index out of range");
  const bcos::EvalResult& r = result->result.per_image[image][index];
  *tp = r.tp;
  *fp = r.fp;
  *fn = r.fn;
  *precision = r.precision;
  *recall = r.recall;
  *f_measure = r.f_measure;
  return BCF_OK;
}

void bcf_sweep_result_free(bcf_sweep_result* result) { delete result; }

/* ---- synthetic stimuli ---- */

void bcf_stimulus_spec_init(bcf_stimulus_spec* spec) {
  if (!spec) return;
  spec->kind = BCF_STIMULUS_CIRCLE;
  spec->width = 300;
  spec->height = 300;
  spec->radius = 100.0;
  spec->line_width = 5.0;
  spec->gap_deg = 3.0;
  spec->arc_gap_ratio = 4.0;
  spec->noise_variance = 0.0;
  spec->seed = 1;
  spec->gabor_amplitude = 80.0;
  spec->gabor_envelope = 90.0;
  spec->gabor_period = 125.0;
}

bcf_status bcf_synth_generate(const bcf_stimulus_spec* spec, bcf_image** stimulus,
                              bcf_mask** truth) {
  if (!spec || !stimulus || !truth)
    return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_synth_generate: null argument");
  return guarded([&] {
    const bcos::Stimulus s = bcos::generate(to_core(*spec));
    auto img = std::make_unique<bcf_image>();
    img->img = s.image;
    auto m = std::make_unique<bcf_mask>();
    m->map = s.truth;
    *stimulus = img.release();
    *truth = m.release();
  });
}

bcf_status bcf_arc_mask(const bcf_stimulus_spec* spec, bcf_mask** out) {
  if (!spec || !out) return fail(BCF_ERROR_NULL_ARGUMENT, "bcf_arc_mask: null argument");
  return guarded([&] {
    auto m = std::make_unique<bcf_mask>();
    m->map = bcos::arc_mask(to_core(*spec));
    *out = m.release();
  });
}

} /* extern "C" */
