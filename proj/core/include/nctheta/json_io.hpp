#ifndef NCTHETA_JSON_IO_HPP
#define NCTHETA_JSON_IO_HPP

#include <string>
#include <vector>

#include "nctheta/correspondence.hpp"
#include "nctheta/duality.hpp"
#include "nctheta/metaplectic.hpp"
#include "nctheta/nc_algebra.hpp"
#include "nctheta/schwartz.hpp"
#include "nctheta/theta.hpp"

// Wire formats. Complex scalars are [re, im]; matrices are nested arrays in
// row-major order (complex matrices nest the scalar pairs). Malformed input
// raises Error(ErrorKind::Parse).
namespace nctheta {

std::string to_json(const RMatrix& m);
std::string to_json(const CMatrix& m);
std::string to_json(const CVector& v);
RMatrix rmatrix_from_json(const std::string& text);
CMatrix cmatrix_from_json(const std::string& text);
CVector cvector_from_json(const std::string& text);

// {"d":2,"terms":[{"n":[1,0],"c":[re,im]}, ...]}
std::string to_json(const NcElement& f);
NcElement nc_element_from_json(const std::string& text);

// {"g":1,"terms":[{"poly":[{"k":[0],"c":[1,0]}],"Q":[[[0,1]]],"b":[[0,0]]}]}
std::string to_json(const PolyGaussianVector& v);
PolyGaussianVector poly_gaussian_from_json(const std::string& text);

// {"g":1,"z":[[0,0]],"omega":[[[0,1]]],"tol":1e-12}
ThetaQuery theta_query_from_json(const std::string& text);
// {"value":[re,im],"radius":R,"tail_bound":t}
std::string to_json(const ThetaResult& r);

// [{"kind":"fourier"} | {"kind":"shear","B":[[...]]} | {"kind":"linear","A":[[...]]}]
std::vector<MetaplecticGenerator> metaplectic_word_from_json(const std::string& text);

// [{"kind":"gl","A":...} | {"kind":"shear","N":...} | {"kind":"flip","i":1}]
std::vector<DualityGenerator> duality_word_from_json(const std::string& text);

std::string to_json(const CorrespondenceReport& report);
std::string to_csv(const CorrespondenceReport& report);

}  // namespace nctheta

#endif
