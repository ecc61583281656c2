// Wiring: matrix editor, method picker, what-if weight sliders, verdict
// panel, and the dominance digraph.  Committed edits are debounced; at
// most one analyze request is in flight and newer input cancels older.

import { AnalyzeRequest, ApiClient, Method, Report } from './api.js'
import { MatrixEditorState } from './matrix.js'
import { PRESETS, presetById } from './presets.js'
import { renderDigraph, renderReport } from './view.js'

export const DEBOUNCE_MS = 300

export type App = {
  editorState: () => MatrixEditorState
  lastReport: () => Report | null
  loadPreset: (id: string) => void
  setCell: (i: number, j: number, text: string) => void
  setMethod: (m: Method) => void
  setSliderWeight: (index: number, value: number) => void
  flush: () => Promise<void>
}

export function createApp(
  doc: Document,
  client: ApiClient,
  debounceMs: number = DEBOUNCE_MS,
): App {
  let state = new MatrixEditorState(4)
  let method: Method = 'eigenvector'
  let sliderWeights: number[] | null = null
  let report: Report | null = null
  let timer: ReturnType<typeof setTimeout> | null = null
  let inflight: AbortController | null = null
  let pending: Promise<void> = Promise.resolve()

  const el = {
    editor: doc.getElementById('editor') as HTMLElement,
    verdict: doc.getElementById('verdict') as HTMLElement,
    digraph: doc.getElementById('digraph') as HTMLElement,
    sliders: doc.getElementById('sliders') as HTMLElement,
    error: doc.getElementById('error') as HTMLElement,
    presets: doc.getElementById('presets') as HTMLSelectElement | null,
    method: doc.getElementById('method') as HTMLSelectElement | null,
  }

  function buildRequest(): AnalyzeRequest {
    const request: AnalyzeRequest = {
      matrix: { n: state.n, entries: state.payloadEntries() },
      method,
    }
    if (method === 'custom' && sliderWeights) {
      request.custom_weights = [...sliderWeights]
    }
    return request
  }

  function renderEditor(): void {
    const rows: string[] = ['<table class="matrix-editor"><tbody>']
    for (let i = 0; i < state.n; i++) {
      rows.push('<tr>')
      for (let j = 0; j < state.n; j++) {
        if (state.isEditable(i, j)) {
          rows.push(
            `<td><input data-cell="${i}-${j}" value="${state.cellText(i, j)}"/></td>`,
          )
        } else {
          rows.push(`<td class="readonly" data-cell="${i}-${j}">${state.cellText(i, j)}</td>`)
        }
      }
      rows.push('</tr>')
    }
    rows.push('</tbody></table>')
    el.editor.innerHTML = rows.join('')
    for (const input of Array.from(el.editor.querySelectorAll('input'))) {
      input.addEventListener('input', () => {
        const [i, j] = (input.getAttribute('data-cell') as string)
          .split('-')
          .map(Number)
        setCell(i, j, (input as HTMLInputElement).value)
      })
    }
  }

  function renderSliders(): void {
    if (!report || method !== 'custom' || !sliderWeights) {
      el.sliders.innerHTML = ''
      return
    }
    const rows = sliderWeights
      .map(
        (w, k) =>
          `<label>w${k + 1} <input type="range" data-slider="${k}" min="0.001" max="1" ` +
          `step="0.000001" value="${w}"/> <span>${w.toPrecision(6)}</span></label>`,
      )
      .join('')
    el.sliders.innerHTML = rows
    for (const input of Array.from(el.sliders.querySelectorAll('input'))) {
      input.addEventListener('input', () => {
        const k = Number(input.getAttribute('data-slider'))
        setSliderWeight(k, Number((input as HTMLInputElement).value))
      })
    }
  }

  function renderReportPanels(): void {
    if (!report) return
    el.verdict.innerHTML = renderReport(report)
    el.digraph.innerHTML = renderDigraph(report)
    el.error.textContent = ''
  }

  function showCellErrors(): void {
    const messages = state
      .errors()
      .map((e) => `cell (${e.i + 1}, ${e.j + 1}): ${e.message}`)
    el.error.textContent = messages.join('; ')
  }

  function schedule(): void {
    if (!state.isValid()) {
      // invalid cells block submission, editor state stays as typed
      showCellErrors()
      return
    }
    el.error.textContent = ''
    if (timer) clearTimeout(timer)
    timer = setTimeout(() => void run(), debounceMs)
  }

  function run(): Promise<void> {
    if (inflight) inflight.abort()
    const controller = new AbortController()
    inflight = controller
    pending = client
      .analyze(buildRequest(), controller.signal)
      .then((r) => {
        if (controller.signal.aborted) return
        report = r
        if (method === 'custom' && !sliderWeights) sliderWeights = [...r.weights]
        renderReportPanels()
        renderSliders()
      })
      .catch((err: unknown) => {
        if (controller.signal.aborted) return
        // network failures are surfaced without touching the editor
        el.error.textContent = err instanceof Error ? err.message : String(err)
      })
    return pending
  }

  function setCell(i: number, j: number, text: string): void {
    state.setCell(i, j, text)
    schedule()
  }

  function setMethod(m: Method): void {
    method = m
    if (m === 'custom' && report && !sliderWeights) {
      sliderWeights = [...report.weights]
    }
    if (m !== 'custom') sliderWeights = null
    schedule()
  }

  function setSliderWeight(index: number, value: number): void {
    if (method !== 'custom' || !sliderWeights) {
      sliderWeights = report ? [...report.weights] : Array(state.n).fill(1 / state.n)
      method = 'custom'
    }
    if (!(value > 0)) return // nonpositive weights are impossible by design
    sliderWeights[index] = value
    schedule()
  }

  function loadPreset(id: string): void {
    const preset = presetById(id)
    state = new MatrixEditorState(preset.n)
    state.loadPreset(preset.upper)
    if (preset.customWeights) {
      method = 'custom'
      sliderWeights = [...preset.customWeights]
    } else {
      method = 'eigenvector'
      sliderWeights = null
    }
    if (el.method) el.method.value = method
    renderEditor()
    schedule()
  }

  async function flush(): Promise<void> {
    if (timer) {
      clearTimeout(timer)
      timer = null
      await run()
    }
    await pending
  }

  if (el.presets) {
    el.presets.innerHTML = PRESETS.map(
      (p) => `<option value="${p.id}">${p.name}</option>`,
    ).join('')
    el.presets.addEventListener('change', () => loadPreset(el.presets!.value))
  }
  if (el.method) {
    el.method.addEventListener('change', () =>
      setMethod(el.method!.value as Method),
    )
  }
  renderEditor()

  return {
    editorState: () => state,
    lastReport: () => report,
    loadPreset,
    setCell,
    setMethod,
    setSliderWeight,
    flush,
  }
}
