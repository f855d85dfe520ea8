#ifndef FFEXT_FFEXT_HPP
#define FFEXT_FFEXT_HPP

#include "errors.hpp"
#include "linalg.hpp"
#include "galois_field.hpp"
#include "poly.hpp"
#include "ratfunc.hpp"
#include "polyring.hpp"
#include "residue_symbols.hpp"
#include "kummer_degree.hpp"
#include "artin_schreier.hpp"
#include "cyclotomic.hpp"
#include "density_lab.hpp"
#include "text.hpp"
#include "report_json.hpp"

#endif  // FFEXT_FFEXT_HPP
