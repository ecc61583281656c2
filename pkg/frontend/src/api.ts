// Typed client for the /api/v1 endpoints.  The UI computes no verdicts of
// its own: every displayed number comes out of a Report returned here.

export type MatrixPayload = {
  n?: number
  entries: (number | string)[][]
}

export type AnalysisOptions = {
  tau_eq?: number
  eps_opt?: number
}

export type Method = 'eigenvector' | 'geometric_mean' | 'custom'

export type AnalyzeRequest = {
  matrix: MatrixPayload
  method: Method
  custom_weights?: number[]
  options?: AnalysisOptions
}

export type CertificateRow = { i: number; j: number; old: number; new: number }

export type GraphInfo = {
  strongly_connected: boolean
  scc_partition: number[][]
  outdegrees: number[]
  acyclic_tournament: boolean
  topological_order: number[] | null
}

export type Report = {
  schema: string
  n: number
  matrix: number[][]
  method: string
  weights: number[]
  lambda_max: number | null
  verdict: 'efficient' | 'inefficient'
  weak_verdict: 'weakly_efficient' | 'strongly_inefficient'
  lp_optimum: number | null
  weak_lp_optimum: number | null
  index_sets: { overshoot: number[][]; ties: number[][] }
  graph: GraphInfo
  dominator: number[] | null
  dominance_certificate: CertificateRow[]
  near_ties: number[][]
  dot: string
  options: { tau_eq: number; eps_opt: number }
}

export type Health = { status: string; version: string }

export class ApiError extends Error {
  constructor(message: string, readonly status: number, readonly body?: unknown) {
    super(message)
  }
}

async function postJson<T>(url: string, payload: unknown, signal?: AbortSignal): Promise<T> {
  const res = await fetch(url, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(payload),
    signal,
  })
  if (!res.ok) {
    let detail: unknown
    let message = `${res.status}`
    try {
      detail = await res.json()
      const d = detail as { message?: string; error?: string }
      message = d.message ?? d.error ?? message
    } catch {
      /* non-JSON error body */
    }
    throw new ApiError(message, res.status, detail)
  }
  return res.json() as Promise<T>
}

export class ApiClient {
  constructor(private readonly base: string = '') {}

  analyze(request: AnalyzeRequest, signal?: AbortSignal): Promise<Report> {
    return postJson<Report>(`${this.base}/api/v1/analyze`, request, signal)
  }

  async health(): Promise<Health> {
    const res = await fetch(`${this.base}/api/v1/health`)
    if (!res.ok) throw new ApiError(`${res.status}`, res.status)
    return res.json() as Promise<Health>
  }
}
