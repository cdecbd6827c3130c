// Pure DOM builders: every function maps (exercise, report, history) data
// to a detached element tree, so snapshots fully determine the UI.

import type {
  ArgumentReport, ArgumentSummary, AttemptEntry, DeformalizationReport,
  Directional, ExerciseDetail, FormalizationReport, Notation,
  SimplicityPayload,
} from './types.js'

function el<K extends keyof HTMLElementTagNameMap>(
    tag: K, className?: string, text?: string): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag)
  if (className) node.className = className
  if (text !== undefined) node.textContent = text
  return node
}

const VERDICT_LABELS: Record<string, string> = {
  'equivalent': 'Equivalent',
  'sufficient-not-necessary': 'Sufficient, not necessary',
  'necessary-not-sufficient': 'Necessary, not sufficient',
  'neither': 'Not equivalent',
  'partially-unverified': 'Could not verify',
}

function cell(row: HTMLTableRowElement, text: string): void {
  const data = document.createElement('td')
  data.textContent = text
  row.appendChild(data)
}

export function notationTable(notation: Notation): HTMLElement {
  const table = el('table', 'notation')
  const body = document.createElement('tbody')
  table.appendChild(body)
  const addRow = (symbol: string, gloss: string) => {
    const row = document.createElement('tr')
    cell(row, symbol)
    cell(row, gloss)
    body.appendChild(row)
  }
  for (const p of notation.props ?? []) addRow(p.symbol, p.gloss)
  for (const p of notation.preds ?? []) {
    const args = ['x', 'y', 'z', 'w'].slice(0, p.arity).join(',')
    addRow(`${p.symbol}(${args})`, p.gloss)
  }
  for (const c of notation.consts ?? []) addRow(c.symbol, c.gloss)
  return table
}

export function exerciseView(exercise: ExerciseDetail,
                             history: readonly AttemptEntry[]): HTMLElement {
  const root = el('section', `exercise mode-${exercise.mode}`)
  root.appendChild(el('h2', 'exercise-id', exercise.id))
  root.appendChild(notationTable(exercise.notation))

  const task = el('p', 'task')
  if (exercise.mode === 'deformalize') {
    task.append('Express the formula ')
    task.appendChild(el('code', 'formula', exercise.formula ?? ''))
    task.append(' in natural language, as simply as you can.')
  } else {
    task.append('Formalize: ')
    task.appendChild(el('em', 'sentence', exercise.sentence ?? ''))
  }
  root.appendChild(task)

  const form = el('form', 'answer-form')
  const input = el('textarea', 'answer-input') as HTMLTextAreaElement
  input.rows = 3
  input.placeholder = exercise.mode === 'deformalize'
    ? 'Your sentence...' : 'Your formula...'
  form.appendChild(input)
  const submit = el('button', 'submit', 'Check answer') as HTMLButtonElement
  submit.type = 'submit'
  form.appendChild(submit)
  root.appendChild(form)

  if (history.length > 0) {
    const panel = el('div', 'history')
    panel.appendChild(el('h3', undefined, 'Attempts'))
    const list = el('ol')
    for (const attempt of history) {
      const item = el('li')
      item.appendChild(el('span', 'attempt-text', attempt.submitted))
      item.appendChild(el('span', 'attempt-verdict',
        attempt.verdict ?? 'no verdict'))
      if (attempt.simplicity !== null) {
        item.appendChild(el('span', 'attempt-simplicity',
          attempt.simplicity.toFixed(2)))
      }
      list.appendChild(item)
    }
    panel.appendChild(list)
    root.appendChild(panel)
  }
  return root
}

export function verdictBadge(verdict: { kind: string } | null): HTMLElement {
  if (verdict === null) {
    return el('span', 'badge badge-none', 'No verdict')
  }
  const badge = el('span', `badge badge-${verdict.kind}`,
    VERDICT_LABELS[verdict.kind] ?? verdict.kind)
  return badge
}

export function countermodelTable(direction: string,
                                  assignment: Record<string, boolean>): HTMLElement {
  const wrapper = el('div', 'countermodel')
  wrapper.appendChild(el('h4', undefined, `Countermodel (${direction})`))
  const table = el('table', 'countermodel-table')
  const thead = document.createElement('thead')
  const tbody = document.createElement('tbody')
  const head = document.createElement('tr')
  const body = document.createElement('tr')
  thead.appendChild(head)
  tbody.appendChild(body)
  table.append(thead, tbody)
  for (const name of Object.keys(assignment).sort()) {
    cell(head, name)
    cell(body, assignment[name] ? 'true' : 'false')
  }
  wrapper.appendChild(table)
  return wrapper
}

export function simplicityGauge(simplicity: SimplicityPayload): HTMLElement {
  const gauge = el('div', `gauge gauge-${simplicity.band}`)
  gauge.appendChild(el('span', 'gauge-label',
    `Simplicity ${simplicity.display_value.toFixed(2)} / 10`))
  const track = el('div', 'gauge-track')
  const fill = el('div', 'gauge-fill')
  fill.style.width = `${Math.round(simplicity.value * 10)}%`
  // band colors: low <= 5 red, mid amber, high >= 8 green
  fill.style.background =
    simplicity.band === 'low' ? '#c0392b'
      : simplicity.band === 'mid' ? '#e6a23c' : '#2a9d8f'
  track.appendChild(fill)
  gauge.appendChild(track)
  return gauge
}

function directionDetail(directional: Directional): HTMLElement {
  const list = el('ul', 'directions')
  const describe = (label: string, outcome: Directional['forward']) => {
    const item = el('li', `direction direction-${outcome.result}`)
    const text = outcome.result === 'unknown'
      ? `${label}: could not verify (${outcome.reason ?? 'budget'})`
      : `${label}: ${outcome.result}`
    item.textContent = text
    return item
  }
  list.appendChild(describe('your answer → expected', directional.forward))
  list.appendChild(describe('expected → your answer', directional.backward))
  return list
}

export function feedbackPanel(
    report: DeformalizationReport | FormalizationReport): HTMLElement {
  const panel = el('section', 'feedback')
  panel.appendChild(verdictBadge(report.verdict))
  panel.appendChild(el('p', 'message', report.message))

  if (report.directional) {
    panel.appendChild(directionDetail(report.directional))
  }
  for (const [direction, assignment] of
       Object.entries(report.countermodels ?? {}).sort()) {
    panel.appendChild(countermodelTable(direction, assignment))
  }
  if ('simplicity' in report && report.simplicity) {
    panel.appendChild(simplicityGauge(report.simplicity))
  }
  if ('errors' in report && report.errors.length > 0) {
    const list = el('ul', 'errors')
    for (const error of report.errors) {
      list.appendChild(el('li', `error-${error.kind}`, error.message))
    }
    panel.appendChild(list)
  }
  if ('echo' in report && report.echo.status === 'formalized') {
    const details = el('details', 'echo')
    details.appendChild(el('summary', undefined, 'How your answer was read'))
    details.appendChild(el('code', 'echo-formula', report.echo.formula ?? ''))
    panel.appendChild(details)
  }
  return panel
}

export function argumentEditor(exercise: ArgumentSummary, steps: string[],
                               report: ArgumentReport | null): HTMLElement {
  const root = el('section', 'argument')
  root.appendChild(el('h2', 'exercise-id', exercise.id))

  const premises = el('ol', 'premises')
  for (const sentence of exercise.premises) {
    premises.appendChild(el('li', undefined, sentence))
  }
  root.appendChild(premises)
  root.appendChild(el('p', 'goal', exercise.goal_sentence))

  const list = el('ol', 'steps')
  steps.forEach((step, index) => {
    const item = el('li', 'step')
    const input = el('input', 'step-input') as HTMLInputElement
    input.type = 'text'
    input.value = step
    input.dataset.index = String(index)
    item.appendChild(input)
    for (const [label, action] of
         [['↑', 'move-up'], ['↓', 'move-down'], ['✕', 'remove']] as const) {
      const button = el('button', `step-${action}`, label) as HTMLButtonElement
      button.type = 'button'
      button.dataset.index = String(index)
      item.appendChild(button)
    }
    const status = report?.steps[index]
    if (status) {
      const mark = el('span', `status status-${status.status}`, status.status)
      if (status.fallacy_hint) {
        mark.title = status.fallacy_hint // hint as tooltip, advisory only
      }
      if (status.detail) {
        mark.dataset.detail = status.detail
      }
      item.appendChild(mark)
    }
    list.appendChild(item)
  })
  root.appendChild(list)

  const add = el('button', 'step-add', 'Add step') as HTMLButtonElement
  add.type = 'button'
  root.appendChild(add)
  const submit = el('button', 'argument-submit', 'Check argument') as HTMLButtonElement
  submit.type = 'button'
  submit.disabled = steps.length === 0 || steps.every(s => !s.trim())
  root.appendChild(submit)

  if (report) {
    const banner = el('div',
      `goal-banner ${report.goal_achieved ? 'goal-reached' : 'goal-missed'}`,
      report.goal_achieved ? 'Goal reached' : report.message)
    root.appendChild(banner)
  }
  return root
}
