#ifndef BKM_BKM_HPP
#define BKM_BKM_HPP

#include "autoforms.hpp"
#include "identities.hpp"
#include "io.hpp"
#include "kacmoody.hpp"
#include "linalg.hpp"
#include "lorentz.hpp"
#include "modforms.hpp"
#include "moonshine.hpp"
#include "pqseries.hpp"
#include "qseries.hpp"
#include "rational.hpp"
#include "report.hpp"

#endif  // BKM_BKM_HPP
