#ifndef THETA_CERT_H
#define THETA_CERT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum ThetaCertStatus {
  /**
   * Success.
   */
  ThetaCertStatus_Ok = 0,
  /**
   * The (target, n) pair has no supported criterion or table.
   */
  ThetaCertStatus_Unsupported = 1,
  /**
   * The scan exhausted its candidates without a certificate.
   */
  ThetaCertStatus_NoCertificate = 2,
  /**
   * Input outside the domain (e.g. Im(tau) <= 0).
   */
  ThetaCertStatus_Domain = 3,
  /**
   * Requested precision unattainable.
   */
  ThetaCertStatus_Precision = 4,
  /**
   * Null pointer or malformed string argument.
   */
  ThetaCertStatus_BadArgument = 5,
  /**
   * A check ran but did not pass.
   */
  ThetaCertStatus_CheckFailed = 6,
  /**
   * Internal error (caught panic).
   */
  ThetaCertStatus_Internal = 7,
} ThetaCertStatus;

/**
 * Opaque residue certificate handle.
 */
typedef struct ThetaCertCertificate ThetaCertCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Dedekind psi of n (0 if n is 0 or out of range).
 */
uint64_t theta_cert_psi(uint64_t n);

/**
 * Validates every embedded modular-polynomial table. Writes 1 to
 * `out_pass` when all invariants hold, 0 otherwise.
 *
 * # Safety
 * `out_pass` must be a valid pointer.
 */
enum ThetaCertStatus theta_cert_tables_validate(int32_t *out_pass);

/**
 * Builds a residue certificate for (target, n) with the default scan
 * candidates. On success `*out` owns a new handle.
 *
 * # Safety
 * `target` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ThetaCertStatus theta_cert_certify(const char *target,
                                        uint32_t n,
                                        struct ThetaCertCertificate **out);

/**
 * The specialization point Y = y0 of a certificate.
 *
 * # Safety
 * `cert` must be a live handle from `theta_cert_certify`.
 */
int64_t theta_cert_certificate_y0(const struct ThetaCertCertificate *cert);

/**
 * The witnessing prime of a certificate.
 *
 * # Safety
 * `cert` must be a live handle from `theta_cert_certify`.
 */
uint64_t theta_cert_certificate_prime(const struct ThetaCertCertificate *cert);

/**
 * The nonzero residue of the exact resultant at y0 modulo the prime.
 *
 * # Safety
 * `cert` must be a live handle from `theta_cert_certify`.
 */
uint64_t theta_cert_certificate_residue(const struct ThetaCertCertificate *cert);

/**
 * Serializes a certificate as a JSON string (caller frees with
 * `theta_cert_string_free`).
 *
 * # Safety
 * `cert` must be a live handle and `out_json` a valid pointer.
 */
enum ThetaCertStatus theta_cert_certificate_to_json(const struct ThetaCertCertificate *cert,
                                                    char **out_json);

/**
 * Releases a certificate handle (accepts NULL).
 *
 * # Safety
 * `cert` must be NULL or a handle not previously freed.
 */
void theta_cert_certificate_free(struct ThetaCertCertificate *cert);

/**
 * Releases a string returned by this library (accepts NULL).
 *
 * # Safety
 * `s` must be NULL or a string not previously freed.
 */
void theta_cert_string_free(char *s);

/**
 * Verifies Jacobi's identity and the seven duplication identities at
 * tau = re + i*im (decimal strings) with the given precision. Writes 1 to
 * `out_pass` if every enclosure check passes.
 *
 * # Safety
 * `re` and `im` must be NUL-terminated strings, `out_pass` valid.
 */
enum ThetaCertStatus theta_cert_verify_identities(const char *re,
                                                  const char *im,
                                                  uint64_t prec,
                                                  int32_t *out_pass);

/**
 * Verifies the modular-polynomial vanishing relation for (target, n) at
 * tau = re + i*im. Writes 1 to `out_pass` on a passing enclosure.
 *
 * # Safety
 * String arguments must be NUL-terminated, `out_pass` valid.
 */
enum ThetaCertStatus theta_cert_verify_modular(const char *target,
                                               uint64_t n,
                                               const char *re,
                                               const char *im,
                                               uint64_t prec,
                                               int32_t *out_pass);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* THETA_CERT_H */
