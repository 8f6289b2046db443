#ifndef DOFCOUNT_DOFCOUNT_HPP
#define DOFCOUNT_DOFCOUNT_HPP

#include "dofcount/error.hpp"
#include "dofcount/rational.hpp"
#include "dofcount/random.hpp"
#include "dofcount/systems.hpp"
#include "dofcount/quantum.hpp"
#include "dofcount/sequential.hpp"
#include "dofcount/linalg.hpp"
#include "dofcount/tomography.hpp"
#include "dofcount/deck_file.hpp"
#include "dofcount/report.hpp"

#endif  // DOFCOUNT_DOFCOUNT_HPP
