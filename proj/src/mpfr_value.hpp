#pragma once

// Minimal RAII holder for an MPFR number. Private to the library.

#include <mpfr.h>

#include <utility>

namespace fracio::detail {

class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t precision) { mpfr_init2(v_, precision); }
  MpfrValue(const MpfrValue& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  MpfrValue(MpfrValue&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  MpfrValue& operator=(const MpfrValue& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  MpfrValue& operator=(MpfrValue&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~MpfrValue() { mpfr_clear(v_); }

  [[nodiscard]] mpfr_ptr get() noexcept { return v_; }
  [[nodiscard]] mpfr_srcptr get() const noexcept { return v_; }
  [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

}  // namespace fracio::detail
